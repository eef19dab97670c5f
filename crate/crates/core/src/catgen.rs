//! Constructors for test categories: posets, groups, and the named fixtures.
//!
//! Categories with nontrivial groups and bisets are supplied as explicit
//! [`RawCategory`] tables; there is no relation-completion engine.

use std::fmt;
use std::str::FromStr;

use crate::fincat::{validate_category, CategoryError, FiniteCategory, ObjectPoset, RawCategory};

/// The named fixtures used across the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureName {
    /// Two objects with trivial groups and one arrow `alpha: x2 → x1`.
    Arrow,
    /// One object with automorphism group `Z/2`.
    G2,
    /// `Aut(x2) = {1, g}` acting freely on `Hom(x2, x1) = {alpha, beta}`.
    Z2Orb,
    /// Kronecker: trivial groups, two parallel arrows `x2 → x1`.
    Kron,
    /// The diamond poset `w < y < v`, `w < z < v` with `a∘c = m = b∘d`.
    Diamond,
    /// `Aut(x2) = Z/2` acting trivially on the single arrow `alpha: x2 → x1`.
    Collapse,
}

impl FixtureName {
    pub const ALL: [FixtureName; 6] = [
        FixtureName::Arrow,
        FixtureName::G2,
        FixtureName::Z2Orb,
        FixtureName::Kron,
        FixtureName::Diamond,
        FixtureName::Collapse,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureName::Arrow => "arrow",
            FixtureName::G2 => "g2",
            FixtureName::Z2Orb => "z2orb",
            FixtureName::Kron => "kron",
            FixtureName::Diamond => "diamond",
            FixtureName::Collapse => "collapse",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = CategoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureName::ALL
            .into_iter()
            .find(|f| f.as_str() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| CategoryError::UnknownFixture(s.to_string()))
    }
}

fn two_objects() -> RawCategory {
    RawCategory::new().object("x1").object("x2").identity("x1", "id_x1").identity("x2", "id_x2")
}

/// Raw table of a fixture, identities implied.
pub fn fixture_raw(name: FixtureName) -> RawCategory {
    let raw = match name {
        FixtureName::Arrow => two_objects().morphism("alpha", "x2", "x1"),
        FixtureName::G2 => RawCategory::new()
            .object("x1")
            .identity("x1", "id_x1")
            .morphism("g", "x1", "x1")
            .compose("g", "g", "id_x1"),
        FixtureName::Z2Orb => two_objects()
            .morphism("g", "x2", "x2")
            .morphism("alpha", "x2", "x1")
            .morphism("beta", "x2", "x1")
            .compose("g", "g", "id_x2")
            .compose("alpha", "g", "beta")
            .compose("beta", "g", "alpha"),
        FixtureName::Kron => two_objects().morphism("alpha", "x2", "x1").morphism("beta", "x2", "x1"),
        FixtureName::Diamond => RawCategory::new()
            .object("w")
            .object("y")
            .object("z")
            .object("v")
            .identity("w", "id_w")
            .identity("y", "id_y")
            .identity("z", "id_z")
            .identity("v", "id_v")
            .morphism("c", "w", "y")
            .morphism("d", "w", "z")
            .morphism("a", "y", "v")
            .morphism("b", "z", "v")
            .morphism("m", "w", "v")
            .compose("a", "c", "m")
            .compose("b", "d", "m"),
        FixtureName::Collapse => two_objects()
            .morphism("g", "x2", "x2")
            .morphism("alpha", "x2", "x1")
            .compose("g", "g", "id_x2")
            .compose("alpha", "g", "alpha"),
    };
    raw.with_implied_identities()
}

pub fn fixture(name: FixtureName) -> FiniteCategory {
    validate_category(&fixture_raw(name)).expect("fixture tables are valid")
}

/// Looks a fixture up by its lowercase name.
pub fn fixture_by_name(name: &str) -> Result<FiniteCategory, CategoryError> {
    name.parse::<FixtureName>().map(fixture)
}

/// The poset category of the reflexive-transitive closure of `covers`
/// (`(a, b)` meaning `a ≤ b`): one morphism `a → b` per relation, named
/// `id_a` for identities and `a<b` otherwise.
pub fn from_poset(elements: &[&str], covers: &[(usize, usize)]) -> Result<FiniteCategory, CategoryError> {
    let poset = ObjectPoset::from_relation(elements, covers)?;
    let n = elements.len();
    let name = |a: usize, b: usize| {
        if a == b {
            format!("id_{}", elements[a])
        } else {
            format!("{}<{}", elements[a], elements[b])
        }
    };
    let mut raw = RawCategory::new();
    for e in elements {
        raw = raw.object(e);
    }
    for a in 0..n {
        raw = raw.identity(elements[a], &name(a, a));
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && poset.leq(a, b) {
                raw = raw.morphism(&name(a, b), elements[a], elements[b]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if poset.leq(a, b) && poset.leq(b, c) {
                    raw = raw.compose(&name(b, c), &name(a, b), &name(a, c));
                }
            }
        }
    }
    validate_category(&raw).map_err(CategoryError::Invalid)
}

/// One-object category of the group with multiplication `table[i][j] = i·j`.
/// Elements are named `id_x1` (the neutral element) and `g1`, `g2`, ...
pub fn from_group(table: &[Vec<usize>]) -> Result<FiniteCategory, CategoryError> {
    let neutral = neutral_element(table)?;
    let mut next = 1;
    let names: Vec<String> = (0..table.len())
        .map(|i| {
            if i == neutral {
                "id_x1".to_string()
            } else {
                let s = format!("g{next}");
                next += 1;
                s
            }
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    from_group_named("x1", &refs, table)
}

fn neutral_element(table: &[Vec<usize>]) -> Result<usize, CategoryError> {
    let n = table.len();
    if n == 0 {
        return Err(CategoryError::NotAGroup("empty table".into()));
    }
    if table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return Err(CategoryError::NotAGroup("table is not square over its index set".into()));
    }
    (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| CategoryError::NotAGroup("no neutral element".into()))
}

/// [`from_group`] with explicit object and element names.
pub fn from_group_named(object: &str, names: &[&str], table: &[Vec<usize>]) -> Result<FiniteCategory, CategoryError> {
    let neutral = neutral_element(table)?;
    let n = table.len();
    if names.len() != n {
        return Err(CategoryError::NotAGroup("one name per element required".into()));
    }
    for a in 0..n {
        if !(0..n).any(|b| table[a][b] == neutral && table[b][a] == neutral) {
            return Err(CategoryError::NotAGroup(format!("{} has no inverse", names[a])));
        }
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(CategoryError::NotAGroup(format!(
                        "associativity fails for ({}, {}, {})",
                        names[a], names[b], names[c]
                    )));
                }
            }
        }
    }
    let mut raw = RawCategory::new().object(object).identity(object, names[neutral]);
    for (i, nm) in names.iter().enumerate() {
        if i != neutral {
            raw = raw.morphism(nm, object, object);
        }
    }
    // keep morphism order equal to element order
    raw.morphisms.sort_by_key(|m| names.iter().position(|n| *n == m.name));
    for a in 0..n {
        for b in 0..n {
            raw = raw.compose(names[a], names[b], names[table[a][b]]);
        }
    }
    validate_category(&raw).map_err(CategoryError::Invalid)
}

/// Multiplication table of the cyclic group `Z/n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}
