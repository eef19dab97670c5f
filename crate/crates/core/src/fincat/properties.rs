use serde::Serialize;

use super::{CategoryError, FiniteCategory, MorId, ObjId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CategoryProperties {
    pub is_ei: bool,
    pub is_skeletal: bool,
    pub is_connected: bool,
}

pub fn is_ei(cat: &FiniteCategory) -> bool {
    cat.objects().all(|x| cat.endomorphisms(x).iter().all(|&f| cat.is_iso(f)))
}

pub fn is_skeletal(cat: &FiniteCategory) -> bool {
    cat.morphisms().all(|f| !cat.is_iso(f) || cat.source(f) == cat.target(f))
}

/// Zig-zag connectivity of the object set.
pub fn is_connected(cat: &FiniteCategory) -> bool {
    let n = cat.num_objects();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if !seen[y] && (!cat.hom(ObjId(x), ObjId(y)).is_empty() || !cat.hom(ObjId(y), ObjId(x)).is_empty()) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn category_properties(cat: &FiniteCategory) -> CategoryProperties {
    CategoryProperties { is_ei: is_ei(cat), is_skeletal: is_skeletal(cat), is_connected: is_connected(cat) }
}

/// An ordering `x_1, ..., x_n` with `Hom(x_i, x_j)` empty whenever `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectOrder(pub Vec<ObjId>);

impl ObjectOrder {
    pub fn objects(&self) -> &[ObjId] {
        &self.0
    }

    /// The object `x_t` (1-based, as in the column index of the matrix form).
    pub fn at(&self, t: usize) -> Option<ObjId> {
        t.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn position(&self, x: ObjId) -> usize {
        self.0.iter().position(|&y| y == x).expect("object missing from order")
    }
}

/// Kahn's algorithm, always taking the earliest available object in input
/// order. An object becomes available once every other object it maps to has
/// been placed.
pub(crate) fn stable_topological_order(cat: &FiniteCategory) -> Result<Vec<ObjId>, CategoryError> {
    let n = cat.num_objects();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n).find(|&x| {
            !placed[x] && (0..n).all(|y| y == x || placed[y] || cat.hom(ObjId(x), ObjId(y)).is_empty())
        });
        match next {
            Some(x) => {
                placed[x] = true;
                order.push(ObjId(x));
            }
            None => {
                let stuck: Vec<String> =
                    (0..n).filter(|&x| !placed[x]).map(|x| cat.object_name(ObjId(x)).to_string()).collect();
                return Err(CategoryError::PosetCycle(stuck));
            }
        }
    }
    Ok(order)
}

pub fn object_order(cat: &FiniteCategory) -> Result<ObjectOrder, CategoryError> {
    stable_topological_order(cat).map(ObjectOrder)
}

/// An object `z` with `Hom(z, x)` nonempty for every `x`; the first in input order.
pub fn smallest_object(cat: &FiniteCategory) -> Option<ObjId> {
    cat.objects().find(|&z| cat.objects().all(|x| !cat.hom(z, x).is_empty()))
}

/// A finite relation `≤` given by its full matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectPoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl ObjectPoset {
    /// `x ≤ y` iff `Hom(x, y)` is nonempty.
    pub fn from_category(cat: &FiniteCategory) -> Self {
        let n = cat.num_objects();
        let leq = (0..n).map(|x| (0..n).map(|y| !cat.hom(ObjId(x), ObjId(y)).is_empty()).collect()).collect();
        ObjectPoset { names: cat.objects().map(|x| cat.object_name(x).to_string()).collect(), leq }
    }

    /// Reflexive-transitive closure of the given pairs `(a, b)` meaning `a ≤ b`.
    /// Fails if the closure is not antisymmetric.
    pub fn from_relation(names: &[&str], pairs: &[(usize, usize)]) -> Result<Self, CategoryError> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(CategoryError::NotAPartialOrder(format!("pair ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(CategoryError::NotAPartialOrder(format!("{} and {} are equivalent", names[i], names[j])));
                }
            }
        }
        Ok(ObjectPoset { names: names.iter().map(|s| s.to_string()).collect(), leq })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn is_minimal(&self, a: usize) -> bool {
        (0..self.len()).all(|b| b == a || !self.leq(b, a))
    }

    pub fn smallest(&self) -> Option<usize> {
        (0..self.len()).find(|&z| (0..self.len()).all(|x| self.leq(z, x)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if !seen[y] && (self.leq(x, y) || self.leq(y, x)) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Two distinct minimal elements with a common upper bound, scanning pairs in
/// index order. `None` when a smallest element exists.
pub fn minimal_pair_with_upper_bound(poset: &ObjectPoset) -> Option<(usize, usize, usize)> {
    if poset.smallest().is_some() {
        return None;
    }
    let minimal: Vec<usize> = (0..poset.len()).filter(|&a| poset.is_minimal(a)).collect();
    for (i, &a) in minimal.iter().enumerate() {
        for &b in &minimal[i + 1..] {
            if let Some(c) = (0..poset.len()).find(|&c| poset.leq(a, c) && poset.leq(b, c)) {
                return Some((a, b, c));
            }
        }
    }
    None
}

/// Orbits of `Aut(x)` acting on `Hom(x, y)` by precomposition `α ↦ α ∘ g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomActionReport {
    pub orbit_count: usize,
    pub is_free: bool,
    pub orbits: Vec<Vec<MorId>>,
}

pub fn hom_action_report(cat: &FiniteCategory, x: ObjId, y: ObjId) -> HomActionReport {
    let group = cat.endomorphisms(x);
    let hom = cat.hom(x, y);
    let mut assigned = vec![false; hom.len()];
    let mut orbits = Vec::new();
    for (i, &alpha) in hom.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut orbit: Vec<MorId> = Vec::new();
        for &g in group {
            let image = cat.comp(alpha, g);
            if !orbit.contains(&image) {
                orbit.push(image);
            }
        }
        orbit.sort();
        for f in &orbit {
            if let Some(j) = hom.iter().position(|h| h == f) {
                assigned[j] = true;
            }
        }
        orbits.push(orbit);
    }
    let is_free = hom
        .iter()
        .all(|&alpha| group.iter().all(|&g| cat.comp(alpha, g) != alpha || g == cat.identity(x)));
    HomActionReport { orbit_count: orbits.len(), is_free, orbits }
}

/// Whether `Aut(x)` acts freely on `Hom(x, y)` for every pair of objects.
pub fn all_actions_free(cat: &FiniteCategory) -> bool {
    cat.objects().all(|x| cat.objects().all(|y| hom_action_report(cat, x, y).is_free))
}
