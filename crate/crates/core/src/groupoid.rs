//! Finite groupoids given by explicit composition tables.

use std::collections::HashMap;

use thiserror::Error;

use crate::validation::{ValidationReport, ViolationKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismId(pub usize);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl MorphismId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("conflicting table entries for `{0}`")]
    ConflictingEntry(String),
    #[error("object sets overlap at `{0}`")]
    OverlappingObjects(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjectId,
    pub tgt: ObjectId,
}

/// The name given to the identity arrow of an object.
pub fn identity_name(object: &str) -> String {
    format!("id:{object}")
}

/// A finite groupoid. Composition `g·h` is defined exactly when
/// `src(g) == tgt(h)`; the table stores `None` elsewhere.
///
/// Construction does not validate; run [`validate_groupoid`] before relying
/// on the groupoid laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorphismId>,
    compose: Vec<Vec<Option<MorphismId>>>,
    inverse: Vec<Option<MorphismId>>,
}

impl Groupoid {
    /// Builds a groupoid from named tables. Identity arrows `id:<object>` are
    /// generated ahead of the listed morphisms; compositions involving an
    /// identity are filled in unless the table lists them explicitly.
    pub fn from_tables(
        objects: &[String],
        morphisms: &[(String, String, String)],
        compositions: &[(String, String, String)],
        inverses: &[(String, String)],
    ) -> Result<Self, GroupoidError> {
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), ObjectId(i)).is_some() {
                return Err(GroupoidError::DuplicateName(o.clone()));
            }
        }
        let obj = |name: &str| obj_index.get(name).copied().ok_or_else(|| GroupoidError::UnknownObject(name.into()));

        let mut all = Vec::new();
        for (i, o) in objects.iter().enumerate() {
            all.push(Morphism { name: identity_name(o), src: ObjectId(i), tgt: ObjectId(i) });
        }
        for (name, s, t) in morphisms {
            all.push(Morphism { name: name.clone(), src: obj(s)?, tgt: obj(t)? });
        }
        let mut mor_index = HashMap::new();
        for (i, m) in all.iter().enumerate() {
            if mor_index.insert(m.name.clone(), MorphismId(i)).is_some() {
                return Err(GroupoidError::DuplicateName(m.name.clone()));
            }
        }
        let mor =
            |name: &str| mor_index.get(name).copied().ok_or_else(|| GroupoidError::UnknownMorphism(name.into()));

        let n = all.len();
        let identity: Vec<MorphismId> = (0..objects.len()).map(MorphismId).collect();
        let mut compose = vec![vec![None; n]; n];
        for (g, h, gh) in compositions {
            let (g, h, gh) = (mor(g)?, mor(h)?, mor(gh)?);
            let slot = &mut compose[g.0][h.0];
            if slot.is_some_and(|x| x != gh) {
                return Err(GroupoidError::ConflictingEntry(format!("{}·{}", all[g.0].name, all[h.0].name)));
            }
            *slot = Some(gh);
        }
        for g in 0..n {
            let id_t = identity[all[g].tgt.0];
            let id_s = identity[all[g].src.0];
            compose[id_t.0][g].get_or_insert(MorphismId(g));
            compose[g][id_s.0].get_or_insert(MorphismId(g));
        }
        let mut inverse = vec![None; n];
        for id in &identity {
            inverse[id.0] = Some(*id);
        }
        for (g, gi) in inverses {
            let (g, gi) = (mor(g)?, mor(gi)?);
            if inverse[g.0].is_some_and(|x| x != gi) {
                return Err(GroupoidError::ConflictingEntry(format!("inverse of {}", all[g.0].name)));
            }
            inverse[g.0] = Some(gi);
        }
        Ok(Groupoid { objects: objects.to_vec(), morphisms: all, identity, compose, inverse })
    }

    /// Assembles a groupoid from index-level tables.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorphismId>,
        compose: Vec<Vec<Option<MorphismId>>>,
        inverse: Vec<Option<MorphismId>>,
    ) -> Self {
        assert_eq!(identity.len(), objects.len());
        assert_eq!(compose.len(), morphisms.len());
        assert_eq!(inverse.len(), morphisms.len());
        Groupoid { objects, morphisms, identity, compose, inverse }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorphismId> + '_ {
        (0..self.morphisms.len()).map(MorphismId)
    }

    pub fn object_name(&self, e: ObjectId) -> &str {
        &self.objects[e.0]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, g: MorphismId) -> &Morphism {
        &self.morphisms[g.0]
    }

    pub fn morphism_name(&self, g: MorphismId) -> &str {
        &self.morphisms[g.0].name
    }

    pub fn find_object(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name).map(ObjectId)
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorphismId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorphismId)
    }

    pub fn src(&self, g: MorphismId) -> ObjectId {
        self.morphisms[g.0].src
    }

    pub fn tgt(&self, g: MorphismId) -> ObjectId {
        self.morphisms[g.0].tgt
    }

    pub fn identity(&self, e: ObjectId) -> MorphismId {
        self.identity[e.0]
    }

    pub fn is_identity(&self, g: MorphismId) -> bool {
        self.identity[self.src(g).0] == g
    }

    /// `g·h`, defined when `src(g) == tgt(h)`.
    pub fn compose(&self, g: MorphismId, h: MorphismId) -> Option<MorphismId> {
        self.compose[g.0][h.0]
    }

    pub fn try_inverse(&self, g: MorphismId) -> Option<MorphismId> {
        self.inverse[g.0]
    }

    /// Inverse of `g`; the groupoid must have passed validation.
    pub fn inverse(&self, g: MorphismId) -> MorphismId {
        self.inverse[g.0].expect("validated groupoid has inverses")
    }

    /// The object with a given index, checked.
    pub fn object(&self, index: usize) -> Result<ObjectId, GroupoidError> {
        if index < self.objects.len() {
            Ok(ObjectId(index))
        } else {
            Err(GroupoidError::UnknownObject(format!("#{index}")))
        }
    }

    fn check_object(&self, e: ObjectId) -> Result<(), GroupoidError> {
        self.object(e.0).map(|_| ())
    }

    /// Sub-groupoid on `objs` keeping the morphisms selected by `keep`
    /// (both endpoints must lie in `objs`). Returns the parent ids of the
    /// retained morphisms, in order.
    pub fn restrict(
        &self,
        objs: &[ObjectId],
        keep: impl Fn(MorphismId) -> bool,
    ) -> Result<(Groupoid, Vec<MorphismId>), GroupoidError> {
        for &e in objs {
            self.check_object(e)?;
        }
        let mut obj_map = vec![None; self.objects.len()];
        let mut objects = Vec::new();
        for e in self.objects() {
            if objs.contains(&e) {
                obj_map[e.0] = Some(ObjectId(objects.len()));
                objects.push(self.objects[e.0].clone());
            }
        }
        let mut mor_map = vec![None; self.morphisms.len()];
        let mut kept = Vec::new();
        for g in self.morphisms() {
            let m = &self.morphisms[g.0];
            if obj_map[m.src.0].is_some() && obj_map[m.tgt.0].is_some() && (self.is_identity(g) || keep(g)) {
                mor_map[g.0] = Some(MorphismId(kept.len()));
                kept.push(g);
            }
        }
        let morphisms = kept
            .iter()
            .map(|&g| {
                let m = &self.morphisms[g.0];
                Morphism { name: m.name.clone(), src: obj_map[m.src.0].unwrap(), tgt: obj_map[m.tgt.0].unwrap() }
            })
            .collect();
        let identity = self
            .objects()
            .filter(|e| obj_map[e.0].is_some())
            .map(|e| mor_map[self.identity[e.0].0].expect("identity kept"))
            .collect();
        let compose = kept
            .iter()
            .map(|&g| kept.iter().map(|&h| self.compose[g.0][h.0].and_then(|gh| mor_map[gh.0])).collect())
            .collect();
        let inverse = kept.iter().map(|&g| self.inverse[g.0].and_then(|gi| mor_map[gi.0])).collect();
        Ok((Groupoid { objects, morphisms, identity, compose, inverse }, kept))
    }

    /// Disjoint union; object and morphism names must not collide.
    pub fn disjoint_union(parts: &[&Groupoid]) -> Result<Groupoid, GroupoidError> {
        let mut objects: Vec<String> = Vec::new();
        let mut morphisms = Vec::new();
        let mut identity = Vec::new();
        let mut inverse = Vec::new();
        let total: usize = parts.iter().map(|p| p.morphisms.len()).sum();
        let mut compose = vec![vec![None; total]; total];
        let mut names = std::collections::HashSet::new();
        for part in parts {
            let obase = objects.len();
            let mbase = morphisms.len();
            for o in &part.objects {
                if objects.contains(o) {
                    return Err(GroupoidError::OverlappingObjects(o.clone()));
                }
                objects.push(o.clone());
            }
            for m in &part.morphisms {
                if !names.insert(m.name.clone()) {
                    return Err(GroupoidError::DuplicateName(m.name.clone()));
                }
                morphisms.push(Morphism {
                    name: m.name.clone(),
                    src: ObjectId(m.src.0 + obase),
                    tgt: ObjectId(m.tgt.0 + obase),
                });
            }
            identity.extend(part.identity.iter().map(|g| MorphismId(g.0 + mbase)));
            inverse.extend(part.inverse.iter().map(|g| g.map(|g| MorphismId(g.0 + mbase))));
            for (i, row) in part.compose.iter().enumerate() {
                for (j, gh) in row.iter().enumerate() {
                    compose[mbase + i][mbase + j] = gh.map(|x| MorphismId(x.0 + mbase));
                }
            }
        }
        Ok(Groupoid { objects, morphisms, identity, compose, inverse })
    }

    /// Copy with every object and morphism name prefixed by `prefix.`;
    /// identity arrows keep the `id:` form.
    pub fn with_prefix(&self, prefix: &str) -> Groupoid {
        let mut out = self.clone();
        for o in out.objects.iter_mut() {
            *o = format!("{prefix}.{o}");
        }
        for g in self.morphisms() {
            out.morphisms[g.0].name = if self.is_identity(g) {
                identity_name(&out.objects[self.src(g).0])
            } else {
                format!("{prefix}.{}", self.morphisms[g.0].name)
            };
        }
        out
    }
}

/// Checks the groupoid laws, listing every violation.
pub fn validate_groupoid(g: &Groupoid) -> ValidationReport {
    let mut report = ValidationReport::default();
    let name = |m: MorphismId| g.morphism_name(m).to_string();

    for e in g.objects() {
        let id = g.identity(e);
        if g.src(id) != e || g.tgt(id) != e {
            report.push(ViolationKind::BadIdentity, format!("identity of {} has wrong endpoints", g.object_name(e)));
        }
    }
    for a in g.morphisms() {
        for b in g.morphisms() {
            let composable = g.src(a) == g.tgt(b);
            match (composable, g.compose(a, b)) {
                (true, None) => report.push(ViolationKind::BadComposition, format!("{}·{} missing", name(a), name(b))),
                (false, Some(_)) => {
                    report.push(ViolationKind::BadComposition, format!("{}·{} defined but not composable", name(a), name(b)))
                }
                (true, Some(ab)) if g.tgt(ab) != g.tgt(a) || g.src(ab) != g.src(b) => {
                    report.push(ViolationKind::BadComposition, format!("{}·{} has wrong endpoints", name(a), name(b)))
                }
                _ => {}
            }
        }
    }
    for a in g.morphisms() {
        if g.compose(g.identity(g.tgt(a)), a) != Some(a) || g.compose(a, g.identity(g.src(a))) != Some(a) {
            report.push(ViolationKind::BadIdentity, format!("identity law fails at {}", name(a)));
        }
    }
    for a in g.morphisms() {
        for b in g.morphisms() {
            let Some(ab) = g.compose(a, b) else { continue };
            for c in g.morphisms() {
                let (Some(bc), true) = (g.compose(b, c), g.src(b) == g.tgt(c)) else { continue };
                let left = g.compose(ab, c);
                let right = g.compose(a, bc);
                if left.is_some() && right.is_some() && left != right {
                    report.push(
                        ViolationKind::NonAssociative,
                        format!("({}·{})·{} != {}·({}·{})", name(a), name(b), name(c), name(a), name(b), name(c)),
                    );
                }
            }
        }
    }
    for a in g.morphisms() {
        let Some(ai) = g.try_inverse(a) else {
            report.push(ViolationKind::MissingInverse, format!("{} has no inverse", name(a)));
            continue;
        };
        if g.compose(a, ai) != Some(g.identity(g.tgt(a))) || g.compose(ai, a) != Some(g.identity(g.src(a))) {
            report.push(ViolationKind::MissingInverse, format!("{} is not inverse to {}", name(ai), name(a)));
        }
    }
    report
}

/// Morphisms from `e` to `f`, in input order.
pub fn hom_set(g: &Groupoid, e: ObjectId, f: ObjectId) -> Result<Vec<MorphismId>, GroupoidError> {
    g.check_object(e)?;
    g.check_object(f)?;
    Ok(g.morphisms().filter(|&m| g.src(m) == e && g.tgt(m) == f).collect())
}

/// The isotropy group at `e` as a one-object groupoid.
pub fn isotropy_group(g: &Groupoid, e: ObjectId) -> Result<Groupoid, GroupoidError> {
    g.restrict(&[e], |m| g.src(m) == e && g.tgt(m) == e).map(|(h, _)| h)
}

/// Full subgroupoid on `objs`.
pub fn full_subgroupoid(g: &Groupoid, objs: &[ObjectId]) -> Result<Groupoid, GroupoidError> {
    g.restrict(objs, |_| true).map(|(h, _)| h)
}

/// Partition of the objects into connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub classes: Vec<Vec<ObjectId>>,
    /// First-listed object of each class.
    pub transversal: Vec<ObjectId>,
}

impl ComponentPartition {
    pub fn class_of(&self, e: ObjectId) -> usize {
        self.classes.iter().position(|c| c.contains(&e)).expect("object in some class")
    }
}

pub fn connected_components(g: &Groupoid) -> ComponentPartition {
    let n = g.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    for m in g.morphisms() {
        let (a, b) = (find(&mut parent, g.src(m).0), find(&mut parent, g.tgt(m).0));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut classes: Vec<Vec<ObjectId>> = Vec::new();
    for e in 0..n {
        let r = find(&mut parent, e);
        let idx = *class_of_root.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(ObjectId(e));
    }
    let transversal = classes.iter().map(|c| c[0]).collect();
    ComponentPartition { classes, transversal }
}
