use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{CategoryError, ValidationError};

/// Index of an object in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ObjId(pub usize);

/// Index of a morphism in input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MorId(pub usize);

impl ObjId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Morphism {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
}

/// A named morphism in an unvalidated description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Unvalidated category data, as read from a file or assembled by hand.
///
/// `comp` entries are `(g, f, h)` meaning `g ∘ f = h`. The table must cover
/// every composable pair, identities included, unless
/// [`RawCategory::with_implied_identities`] is applied first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: Vec<(String, String)>,
    pub comp: Vec<(String, String, String)>,
}

impl RawCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn morphism(mut self, name: &str, source: &str, target: &str) -> Self {
        self.morphisms.push(RawMorphism {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
        });
        self
    }

    /// Declares `name` as the identity of `object`, adding the morphism if it is new.
    pub fn identity(mut self, object: &str, name: &str) -> Self {
        if !self.morphisms.iter().any(|m| m.name == name) {
            self = self.morphism(name, object, object);
        }
        self.identities.push((object.to_string(), name.to_string()));
        self
    }

    pub fn compose(mut self, g: &str, f: &str, h: &str) -> Self {
        self.comp.push((g.to_string(), f.to_string(), h.to_string()));
        self
    }

    /// Adds the unit-law entries `Id ∘ f = f` and `f ∘ Id = f` that are not
    /// already present.
    pub fn with_implied_identities(mut self) -> Self {
        let ids: HashMap<&str, &str> =
            self.identities.iter().map(|(o, m)| (o.as_str(), m.as_str())).collect();
        let mut present: std::collections::HashSet<(String, String)> =
            self.comp.iter().map(|(g, f, _)| (g.clone(), f.clone())).collect();
        let mut extra = Vec::new();
        for m in &self.morphisms {
            if let Some(&idt) = ids.get(m.target.as_str()) {
                if present.insert((idt.to_string(), m.name.clone())) {
                    extra.push((idt.to_string(), m.name.clone(), m.name.clone()));
                }
            }
            if let Some(&ids_) = ids.get(m.source.as_str()) {
                if present.insert((m.name.clone(), ids_.to_string())) {
                    extra.push((m.name.clone(), ids_.to_string(), m.name.clone()));
                }
            }
        }
        self.comp.extend(extra);
        self
    }
}

/// A validated finite category with a total composition table.
///
/// Immutable after validation. Morphism and object ids follow input order,
/// which is also the tie-breaking order everywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    comp: Vec<Option<MorId>>,
    homs: Vec<Vec<MorId>>,
    inverses: Vec<Option<MorId>>,
    grading: Vec<ObjId>,
}

impl FiniteCategory {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.0]
    }

    pub fn name(&self, f: MorId) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn source(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].source
    }

    pub fn target(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].target
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.source(f).0] == f
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId)
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorId)
    }

    /// `g ∘ f`, or `None` when `target(f) != source(g)`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp[g.0 * self.morphisms.len() + f.0]
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| {
            panic!("{} and {} are not composable", self.name(g), self.name(f))
        })
    }

    /// Morphisms `x → y` in input order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.homs[x.0 * self.objects.len() + y.0]
    }

    /// `Hom(x, x)`; a group when the category is EI.
    pub fn endomorphisms(&self, x: ObjId) -> &[MorId] {
        self.hom(x, x)
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverses[f.0].is_some()
    }

    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        self.inverses[f.0]
    }

    /// Object order used to lay out graded vector spaces: the non-increasing
    /// order of [`super::object_order`] when it exists, input order otherwise.
    pub fn grading_order(&self) -> &[ObjId] {
        &self.grading
    }

    /// Position of each object in [`Self::grading_order`].
    pub fn grading_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.num_objects()];
        for (i, x) in self.grading.iter().enumerate() {
            pos[x.0] = i;
        }
        pos
    }

    /// The opposite category: same ids and names, endpoints swapped.
    pub fn opposite(&self) -> FiniteCategory {
        let n = self.morphisms.len();
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), source: m.target, target: m.source })
            .collect();
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                comp[g * n + f] = self.comp[f * n + g];
            }
        }
        Self::assemble(self.objects.clone(), morphisms, self.identities.clone(), comp)
    }

    /// The full subcategory on one object: its automorphism group when EI.
    pub fn full_subcategory_on(&self, x: ObjId) -> FiniteCategory {
        let ends = self.endomorphisms(x).to_vec();
        let local: HashMap<MorId, usize> = ends.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let morphisms = ends
            .iter()
            .map(|&f| Morphism { name: self.name(f).to_string(), source: ObjId(0), target: ObjId(0) })
            .collect();
        let k = ends.len();
        let mut comp = vec![None; k * k];
        for (gi, &g) in ends.iter().enumerate() {
            for (fi, &f) in ends.iter().enumerate() {
                comp[gi * k + fi] = Some(MorId(local[&self.comp(g, f)]));
            }
        }
        let id = MorId(local[&self.identity(x)]);
        Self::assemble(vec![self.object_name(x).to_string()], morphisms, vec![id], comp)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        comp: Vec<Option<MorId>>,
    ) -> FiniteCategory {
        let no = objects.len();
        let mut homs = vec![Vec::new(); no * no];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.source.0 * no + m.target.0].push(MorId(i));
        }
        let mut cat = FiniteCategory {
            objects,
            morphisms,
            identities,
            comp,
            homs,
            inverses: Vec::new(),
            grading: Vec::new(),
        };
        cat.inverses = cat
            .morphisms()
            .map(|f| {
                let (x, y) = (cat.source(f), cat.target(f));
                cat.hom(y, x).iter().copied().find(|&g| {
                    cat.compose(g, f) == Some(cat.identity(x)) && cat.compose(f, g) == Some(cat.identity(y))
                })
            })
            .collect();
        cat.grading = super::properties::stable_topological_order(&cat)
            .unwrap_or_else(|_| cat.objects().collect());
        cat
    }
}

impl fmt::Display for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category with {} objects and {} morphisms", self.num_objects(), self.num_morphisms())
    }
}

/// Checks every category axiom and reports all violations with witnesses.
pub fn validate_category(raw: &RawCategory) -> Result<FiniteCategory, Vec<ValidationError>> {
    use ValidationError as E;
    let mut errors = Vec::new();

    let mut obj_index: HashMap<&str, ObjId> = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_index.insert(o.as_str(), ObjId(i)).is_some() {
            errors.push(E::DuplicateName(o.clone()));
        }
    }
    let mut mor_index: HashMap<&str, MorId> = HashMap::new();
    let mut morphisms = Vec::new();
    for (i, m) in raw.morphisms.iter().enumerate() {
        if mor_index.insert(m.name.as_str(), MorId(i)).is_some() {
            errors.push(E::DuplicateName(m.name.clone()));
        }
        let s = obj_index.get(m.source.as_str()).copied();
        let t = obj_index.get(m.target.as_str()).copied();
        if s.is_none() {
            errors.push(E::UnknownObject(m.source.clone()));
        }
        if t.is_none() {
            errors.push(E::UnknownObject(m.target.clone()));
        }
        morphisms.push(Morphism {
            name: m.name.clone(),
            source: s.unwrap_or(ObjId(0)),
            target: t.unwrap_or(ObjId(0)),
        });
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let mut identities: Vec<Option<MorId>> = vec![None; raw.objects.len()];
    for (o, m) in &raw.identities {
        let Some(&x) = obj_index.get(o.as_str()) else {
            errors.push(E::UnknownObject(o.clone()));
            continue;
        };
        let Some(&f) = mor_index.get(m.as_str()) else {
            errors.push(E::UnknownMorphism(m.clone()));
            continue;
        };
        if morphisms[f.0].source != x || morphisms[f.0].target != x {
            errors.push(E::IdentityEndpoints { object: o.clone(), morphism: m.clone() });
            continue;
        }
        match identities[x.0] {
            Some(prev) if prev != f => errors.push(E::DuplicateIdentity {
                object: o.clone(),
                first: morphisms[prev.0].name.clone(),
                second: m.clone(),
            }),
            _ => identities[x.0] = Some(f),
        }
    }
    for (i, id) in identities.iter().enumerate() {
        if id.is_none() {
            errors.push(E::MissingIdentity(raw.objects[i].clone()));
        }
    }

    let n = morphisms.len();
    let mut comp: Vec<Option<MorId>> = vec![None; n * n];
    for (g, f, h) in &raw.comp {
        let lookup = |name: &String, errors: &mut Vec<ValidationError>| {
            let r = mor_index.get(name.as_str()).copied();
            if r.is_none() {
                errors.push(E::UnknownMorphism(name.clone()));
            }
            r
        };
        let (Some(gi), Some(fi), Some(hi)) = (lookup(g, &mut errors), lookup(f, &mut errors), lookup(h, &mut errors))
        else {
            continue;
        };
        let (mg, mf, mh) = (&morphisms[gi.0], &morphisms[fi.0], &morphisms[hi.0]);
        if mf.target != mg.source {
            errors.push(E::NotComposable { g: g.clone(), f: f.clone() });
            continue;
        }
        if mh.source != mf.source || mh.target != mg.target {
            errors.push(E::EndpointMismatch { g: g.clone(), f: f.clone(), result: h.clone() });
            continue;
        }
        match comp[gi.0 * n + fi.0] {
            Some(prev) if prev != hi => errors.push(E::ConflictingEntry {
                g: g.clone(),
                f: f.clone(),
                first: morphisms[prev.0].name.clone(),
                second: h.clone(),
            }),
            _ => comp[gi.0 * n + fi.0] = Some(hi),
        }
    }
    for g in 0..n {
        for f in 0..n {
            if morphisms[f].target == morphisms[g].source && comp[g * n + f].is_none() {
                errors.push(E::IncompleteTable { g: morphisms[g].name.clone(), f: morphisms[f].name.clone() });
            }
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let identities: Vec<MorId> = identities.into_iter().map(Option::unwrap).collect();
    for (fi, m) in morphisms.iter().enumerate() {
        let left = identities[m.target.0];
        let right = identities[m.source.0];
        if comp[left.0 * n + fi] != Some(MorId(fi)) {
            errors.push(E::UnitLaw { identity: morphisms[left.0].name.clone(), f: m.name.clone() });
        }
        if comp[fi * n + right.0] != Some(MorId(fi)) {
            errors.push(E::UnitLaw { identity: morphisms[right.0].name.clone(), f: m.name.clone() });
        }
    }
    for f in 0..n {
        for g in 0..n {
            let Some(gf) = comp[g * n + f] else { continue };
            for h in 0..n {
                let Some(hg) = comp[h * n + g] else { continue };
                if comp[h * n + gf.0] != comp[hg.0 * n + f] {
                    errors.push(E::Associativity {
                        h: morphisms[h].name.clone(),
                        g: morphisms[g].name.clone(),
                        f: morphisms[f].name.clone(),
                    });
                }
            }
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(FiniteCategory::assemble(raw.objects.clone(), morphisms, identities, comp))
}

impl FiniteCategory {
    /// Back to raw data: identities declared, full table emitted.
    pub fn to_raw(&self) -> RawCategory {
        let mut raw = RawCategory::new();
        raw.objects = self.objects.clone();
        raw.morphisms = self
            .morphisms
            .iter()
            .map(|m| RawMorphism {
                name: m.name.clone(),
                source: self.objects[m.source.0].clone(),
                target: self.objects[m.target.0].clone(),
            })
            .collect();
        raw.identities = self
            .objects()
            .map(|x| (self.object_name(x).to_string(), self.name(self.identity(x)).to_string()))
            .collect();
        for g in self.morphisms() {
            for f in self.morphisms() {
                if let Some(h) = self.compose(g, f) {
                    raw.comp.push((self.name(g).to_string(), self.name(f).to_string(), self.name(h).to_string()));
                }
            }
        }
        raw
    }

    /// Looks up an object by name, for APIs taking user input.
    pub fn object_by_name(&self, name: &str) -> Result<ObjId, CategoryError> {
        self.find_object(name).ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn morphism_by_name(&self, name: &str) -> Result<MorId, CategoryError> {
        self.find_morphism(name).ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
    }
}
