//! Finite permutation groups stored by full element table, plus the classical
//! subgroup oracles (normalizer, normal closure, abnormality, contranormality)
//! the lattice-valued layer is checked against.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::perm::{Perm, PermError};

/// Largest group the closure will build unless told otherwise.
pub const DEFAULT_ORDER_CAP: usize = 10080;

/// Above this order the Cayley table is not materialized.
const TABLE_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group closure exceeded {cap} elements")]
    SizeBudgetExceeded { cap: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("H is not contained in K")]
    NotNested,
    #[error("`{0}` is not an element of this group")]
    UnknownElement(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("no image given for generator {0}")]
    IncompleteGenerators(String),
}

/// A set of element ids of one group. Subgroups are represented this way and
/// compared by set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet(FixedBitSet);

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet(FixedBitSet::with_capacity(order))
    }

    pub fn full(order: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(order);
        b.insert_range(..);
        ElementSet(b)
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(order: usize, ids: I) -> Self {
        let mut s = Self::empty(order);
        for i in ids {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        !self.0.put(x)
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    /// Ids in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut b = self.0.clone();
        b.union_with(&other.0);
        ElementSet(b)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut b = self.0.clone();
        b.intersect_with(&other.0);
        ElementSet(b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut b = self.0.clone();
        b.difference_with(&other.0);
        ElementSet(b)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Option<Vec<u32>>,
    inv: Vec<u32>,
    generators: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.degree == other.degree && self.elements == other.elements)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn from_generators(name: &str, degree: usize, gens: &[Perm]) -> Result<Self, GroupError> {
        Self::from_generators_capped(name, degree, gens, DEFAULT_ORDER_CAP)
    }

    /// Closure of `gens` under composition. Elements are sorted by image
    /// array, so the identity always has id 0.
    pub fn from_generators_capped(
        name: &str,
        degree: usize,
        gens: &[Perm],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let e = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(e.clone());
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = &x * g;
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::SizeBudgetExceeded { cap });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let n = elements.len();
        let inv = elements
            .iter()
            .map(|p| index[&p.inverse()] as u32)
            .collect();
        let mul = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&(a * b)] as u32);
                }
            }
            t
        });
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            degree,
            elements,
            index,
            mul,
            inv,
            generators,
        })
    }

    /// Cyclic group of order `n` acting regularly on `n` points.
    pub fn cyclic(name: &str, n: usize) -> Self {
        let shift = Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect())
            .expect("shift is a permutation");
        Self::from_generators(name, n, &[shift]).expect("cyclic group fits the cap")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Declared generators, as element ids.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn perm(&self, x: usize) -> &Perm {
        &self.elements[x]
    }

    pub fn id_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Element id of a cycle-notation string.
    pub fn element(&self, text: &str) -> Result<usize, GroupError> {
        let p = Perm::parse(self.degree, text)?;
        self.id_of(&p)
            .ok_or_else(|| GroupError::UnknownElement(text.to_string()))
    }

    /// Element ids of several cycle-notation strings.
    pub fn elements_of(&self, texts: &[&str]) -> Result<Vec<usize>, GroupError> {
        texts.iter().map(|t| self.element(t)).collect()
    }

    pub fn ids(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&(&self.elements[a] * &self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `z x z⁻¹`.
    #[inline]
    pub fn conj(&self, z: usize, x: usize) -> usize {
        self.mul(self.mul(z, x), self.inv(z))
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    pub fn trivial(&self) -> ElementSet {
        ElementSet::from_ids(self.order(), [self.identity()])
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, ids: I) -> ElementSet {
        ElementSet::from_ids(self.order(), ids)
    }

    pub fn display_set(&self, s: &ElementSet) -> String {
        let parts: Vec<String> = s.iter().map(|x| self.perm(x).to_string()).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Smallest subgroup containing `set`; `{e}` for the empty set.
    pub fn subgroup_generated<I: IntoIterator<Item = usize>>(&self, set: I) -> ElementSet {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.trivial();
        for s in set {
            if current.contains(s) {
                continue;
            }
            gens.push(s);
            current = self.closure_from(&current, &gens);
        }
        current
    }

    /// Closure of `start ∪ gens` under right multiplication by `gens`.
    fn closure_from(&self, start: &ElementSet, gens: &[usize]) -> ElementSet {
        let mut out = start.clone();
        let mut queue: VecDeque<usize> = start.iter().collect();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if out.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        out
    }

    pub fn is_subgroup(&self, h: &ElementSet) -> bool {
        if !h.contains(self.identity()) {
            return false;
        }
        h.iter().all(|x| h.iter().all(|y| h.contains(self.mul(x, y))))
    }

    /// `g H g⁻¹`, without checking that `H` is a subgroup.
    pub fn conjugate_set(&self, h: &ElementSet, g: usize) -> ElementSet {
        ElementSet::from_ids(self.order(), h.iter().map(|x| self.conj(g, x)))
    }

    /// `g H g⁻¹`.
    pub fn conjugate_subgroup(&self, h: &ElementSet, g: usize) -> Result<ElementSet, GroupError> {
        if !self.is_subgroup(h) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(self.conjugate_set(h, g))
    }

    fn check_nested(&self, k: &ElementSet, h: &ElementSet) -> Result<(), GroupError> {
        if !self.is_subgroup(k) || !self.is_subgroup(h) {
            return Err(GroupError::NotASubgroup);
        }
        if !h.is_subset(k) {
            return Err(GroupError::NotNested);
        }
        Ok(())
    }

    /// `H ⊴ K`.
    pub fn is_normal_in(&self, k: &ElementSet, h: &ElementSet) -> Result<bool, GroupError> {
        self.check_nested(k, h)?;
        Ok(k.iter().all(|g| h.iter().all(|x| h.contains(self.conj(g, x)))))
    }

    /// `N_K(H) = {k ∈ K : kHk⁻¹ = H}`.
    pub fn classical_normalizer(
        &self,
        k: &ElementSet,
        h: &ElementSet,
    ) -> Result<ElementSet, GroupError> {
        self.check_nested(k, h)?;
        Ok(ElementSet::from_ids(
            self.order(),
            k.iter().filter(|&g| h.iter().all(|x| h.contains(self.conj(g, x)))),
        ))
    }

    /// Smallest normal subgroup of `K` containing `H`.
    pub fn classical_normal_closure(
        &self,
        k: &ElementSet,
        h: &ElementSet,
    ) -> Result<ElementSet, GroupError> {
        self.check_nested(k, h)?;
        let mut n = h.clone();
        loop {
            let mut conjugates = n.clone();
            for g in k.iter() {
                for x in n.iter() {
                    conjugates.insert(self.conj(g, x));
                }
            }
            if conjugates == n {
                return Ok(n);
            }
            n = self.subgroup_generated(conjugates.iter());
        }
    }

    /// For every `x ∈ K`, `x ∈ ⟨H, xHx⁻¹⟩`.
    pub fn classical_is_abnormal(&self, k: &ElementSet, h: &ElementSet) -> Result<bool, GroupError> {
        self.check_nested(k, h)?;
        Ok(k.iter().all(|x| {
            let conj = self.conjugate_set(h, x);
            self.subgroup_generated(h.iter().chain(conj.iter())).contains(x)
        }))
    }

    /// The normal closure of `H` in `K` is `K`.
    pub fn classical_is_contranormal(
        &self,
        k: &ElementSet,
        h: &ElementSet,
    ) -> Result<bool, GroupError> {
        Ok(self.classical_normal_closure(k, h)? == *k)
    }

    /// Every subgroup, sorted by order and then by element ids.
    pub fn all_subgroups(&self) -> Vec<ElementSet> {
        let mut found: HashSet<ElementSet> = HashSet::new();
        let trivial = self.trivial();
        found.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(s) = frontier.pop() {
            for g in self.ids() {
                if s.contains(g) {
                    continue;
                }
                let t = self.subgroup_generated(s.iter().chain([g]));
                if found.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let mut out: Vec<ElementSet> = found.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.to_vec()));
        out
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {}, order {})", self.name, self.degree, self.order())
    }
}

/// Group homomorphism given by a full image table.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let map = g.ids().collect();
        Homomorphism {
            source: g.clone(),
            target: g,
            map,
        }
    }

    /// Extends `(generator, image)` pairs multiplicatively. Every declared
    /// generator of `source` must be given an image.
    pub fn from_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        gen_images: &[(usize, usize)],
    ) -> Result<Self, GroupError> {
        let mut gen_map: HashMap<usize, usize> = HashMap::new();
        for &(g, img) in gen_images {
            if let Some(prev) = gen_map.insert(g, img) {
                if prev != img {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "two images for {}",
                        source.perm(g)
                    )));
                }
            }
        }
        let gens: Vec<(usize, usize)> = source
            .generators()
            .iter()
            .map(|&g| {
                gen_map
                    .get(&g)
                    .map(|&img| (g, img))
                    .ok_or_else(|| GroupError::IncompleteGenerators(source.perm(g).to_string()))
            })
            .collect::<Result<_, _>>()?;
        // images given for non-generators must also be consistent; checked below
        const UNSET: usize = usize::MAX;
        let mut map = vec![UNSET; source.order()];
        map[source.identity()] = target.identity();
        let mut queue = VecDeque::from([source.identity()]);
        while let Some(x) = queue.pop_front() {
            for &(g, img) in &gens {
                let y = source.mul(x, g);
                let fy = target.mul(map[x], img);
                if map[y] == UNSET {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "{} would map to both {} and {}",
                        source.perm(y),
                        target.perm(map[y]),
                        target.perm(fy)
                    )));
                }
            }
        }
        for (&g, &img) in &gen_map {
            if map[g] != img {
                return Err(GroupError::NotAHomomorphism(format!(
                    "{} is forced to {}",
                    source.perm(g),
                    target.perm(map[g])
                )));
            }
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image_set(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.target.order(), s.iter().map(|x| self.map[x]))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set(&self.source.all()).len() == self.target.order()
    }

    pub fn is_injective(&self) -> bool {
        self.image_set(&self.source.all()).len() == self.source.order()
    }
}

/// Named groups used by the bundled assets and the verification suites.
pub mod standard {
    use super::*;

    fn build(name: &str, degree: usize, gens: &[&str]) -> FiniteGroup {
        let gens: Vec<Perm> = gens
            .iter()
            .map(|g| Perm::parse(degree, g).expect("valid generator"))
            .collect();
        FiniteGroup::from_generators(name, degree, &gens).expect("small group")
    }

    pub fn s3() -> FiniteGroup {
        build("S3", 3, &["(1 2)", "(1 2 3)"])
    }

    pub fn d4() -> FiniteGroup {
        build("D4", 4, &["(2 4)", "(1 2 3 4)"])
    }

    pub fn z6() -> FiniteGroup {
        build("Z6", 6, &["(1 2 3 4 5 6)"])
    }

    pub fn a4() -> FiniteGroup {
        build("A4", 4, &["(1 2 3)", "(2 3 4)"])
    }

    pub fn s4() -> FiniteGroup {
        build("S4", 4, &["(1 2)", "(1 2 3 4)"])
    }
}
