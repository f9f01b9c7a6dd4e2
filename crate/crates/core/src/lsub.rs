//! L-subsets of a finite group: valuations `G → L`, level sets, L-points,
//! set products, images and generated L-subgroups.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{ElementSet, FiniteGroup, Homomorphism};
use crate::lattice::{Elem, FiniteLattice, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LSubError {
    #[error("L-subsets live over different groups or lattices")]
    MismatchedCarriers,
    #[error("valuation has {found} entries, group has {expected} elements")]
    WrongLength { expected: usize, found: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("not an L-subgroup")]
    NotAnLSubgroup,
    #[error("not contained in parent")]
    NotContained,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// The L-point `a_x`: value `a` at `x`, bottom elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LPoint {
    pub level: Elem,
    pub at: usize,
}

impl LPoint {
    pub fn new(level: Elem, at: usize) -> Self {
        LPoint { level, at }
    }

    /// `a_x ∈ μ`, i.e. `a ≤ μ(x)`.
    pub fn belongs_to(&self, mu: &LSubset) -> bool {
        mu.lattice.leq(self.level, mu.value(self.at))
    }
}

/// A total valuation of a finite group in a finite lattice.
#[derive(Clone)]
pub struct LSubset {
    group: Arc<FiniteGroup>,
    lattice: Arc<FiniteLattice>,
    values: Vec<Elem>,
}

impl PartialEq for LSubset {
    fn eq(&self, other: &Self) -> bool {
        self.same_carriers(other) && self.values == other.values
    }
}

impl Eq for LSubset {}

impl LSubset {
    pub fn new(
        group: Arc<FiniteGroup>,
        lattice: Arc<FiniteLattice>,
        values: Vec<Elem>,
    ) -> Result<Self, LSubError> {
        if values.len() != group.order() {
            return Err(LSubError::WrongLength {
                expected: group.order(),
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !lattice.contains(**v)) {
            return Err(LatticeError::ForeignElement(format!("#{}", v.index())).into());
        }
        Ok(LSubset {
            group,
            lattice,
            values,
        })
    }

    pub fn from_fn(
        group: Arc<FiniteGroup>,
        lattice: Arc<FiniteLattice>,
        f: impl Fn(usize) -> Elem,
    ) -> Self {
        let values = group.ids().map(f).collect();
        LSubset {
            group,
            lattice,
            values,
        }
    }

    pub fn constant(group: Arc<FiniteGroup>, lattice: Arc<FiniteLattice>, c: Elem) -> Self {
        Self::from_fn(group, lattice, |_| c)
    }

    /// `1_H`: top on `H`, bottom elsewhere.
    pub fn characteristic(
        group: Arc<FiniteGroup>,
        lattice: Arc<FiniteLattice>,
        h: &ElementSet,
    ) -> Result<Self, LSubError> {
        if !group.is_subgroup(h) {
            return Err(LSubError::NotASubgroup);
        }
        let (top, bot) = (lattice.top(), lattice.bottom());
        Ok(Self::from_fn(group, lattice, |x| {
            if h.contains(x) {
                top
            } else {
                bot
            }
        }))
    }

    /// The L-point `a_x` as an L-subset.
    pub fn point(group: Arc<FiniteGroup>, lattice: Arc<FiniteLattice>, p: LPoint) -> Self {
        let bot = lattice.bottom();
        Self::from_fn(group, lattice, |y| if y == p.at { p.level } else { bot })
    }

    /// Same carriers, new values.
    pub fn with_values(&self, values: Vec<Elem>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        LSubset {
            group: self.group.clone(),
            lattice: self.lattice.clone(),
            values,
        }
    }

    pub fn map_values(&self, f: impl Fn(usize) -> Elem) -> Self {
        self.with_values(self.group.ids().map(f).collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    #[inline]
    pub fn value(&self, x: usize) -> Elem {
        self.values[x]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Elem> {
        self.values
    }

    pub fn same_carriers(&self, other: &LSubset) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
    }

    pub fn check_carriers(&self, other: &LSubset) -> Result<(), LSubError> {
        if self.same_carriers(other) {
            Ok(())
        } else {
            Err(LSubError::MismatchedCarriers)
        }
    }

    pub fn tip(&self) -> Elem {
        self.values
            .iter()
            .fold(self.lattice.bottom(), |acc, &v| self.lattice.join(acc, v))
    }

    pub fn tail(&self) -> Elem {
        self.lattice.inf_of(self.values.iter().copied())
    }

    /// `Im(η)`, sorted and without repeats.
    pub fn image(&self) -> Vec<Elem> {
        let mut im = self.values.clone();
        im.sort();
        im.dedup();
        im
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// `η_t = {x : η(x) ≥ t}`.
    pub fn level(&self, t: Elem) -> ElementSet {
        ElementSet::from_ids(
            self.group.order(),
            self.group
                .ids()
                .filter(|&x| self.lattice.leq(t, self.values[x])),
        )
    }

    pub fn level_set(&self, t: Elem) -> Result<ElementSet, LSubError> {
        if !self.lattice.contains(t) {
            return Err(LatticeError::ForeignElement(format!("#{}", t.index())).into());
        }
        Ok(self.level(t))
    }

    /// Pointwise `η ⊆ ν`. Carriers are assumed equal.
    pub fn is_subset_of(&self, other: &LSubset) -> bool {
        debug_assert!(self.same_carriers(other));
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&a, &b)| self.lattice.leq(a, b))
    }

    pub fn is_proper_subset_of(&self, other: &LSubset) -> bool {
        self.is_subset_of(other) && self.values != other.values
    }

    pub fn union(&self, other: &LSubset) -> LSubset {
        debug_assert!(self.same_carriers(other));
        self.map_values(|x| self.lattice.join(self.values[x], other.values[x]))
    }

    pub fn intersection(&self, other: &LSubset) -> LSubset {
        debug_assert!(self.same_carriers(other));
        self.map_values(|x| self.lattice.meet(self.values[x], other.values[x]))
    }

    /// `η(xy) ≥ η(x) ∧ η(y)` and `η(x⁻¹) = η(x)`.
    pub fn satisfies_subgroup_axioms(&self) -> bool {
        let (g, l) = (&*self.group, &*self.lattice);
        for x in g.ids() {
            if self.values[g.inv(x)] != self.values[x] {
                return false;
            }
            for y in g.ids() {
                let m = l.meet(self.values[x], self.values[y]);
                if !l.leq(m, self.values[g.mul(x, y)]) {
                    return false;
                }
            }
        }
        true
    }

    /// Every non-empty level set is a subgroup.
    pub fn levels_are_subgroups(&self) -> bool {
        self.lattice.elements().all(|t| {
            let lv = self.level(t);
            lv.is_empty() || self.group.is_subgroup(&lv)
        })
    }

    /// Whether this is an L-subgroup of `G`, by both criteria.
    pub fn is_lsubgroup(&self) -> Result<bool, LSubError> {
        let direct = self.satisfies_subgroup_axioms();
        let by_levels = self.levels_are_subgroups();
        if direct != by_levels {
            return Err(LSubError::Inconsistent(format!(
                "axiom check says {direct}, level check says {by_levels}"
            )));
        }
        Ok(direct)
    }

    /// Whether this is an L-subgroup of `mu`. The axiom route and the
    /// level-subgroup route are both run and must agree.
    pub fn is_lsubgroup_of(&self, mu: &LSubset) -> Result<bool, LSubError> {
        self.check_carriers(mu)?;
        if !self.is_subset_of(mu) {
            return Ok(false);
        }
        let direct = self.satisfies_subgroup_axioms();
        let by_levels = self.lattice.elements().all(|t| {
            let lv = self.level(t);
            lv.is_empty() || (self.group.is_subgroup(&lv) && lv.is_subset(&mu.level(t)))
        });
        if direct != by_levels {
            return Err(LSubError::Inconsistent(format!(
                "axiom check says {direct}, level check says {by_levels}"
            )));
        }
        Ok(direct)
    }

    /// Tip at the identity, tail everywhere else.
    pub fn trivial_lsubgroup(&self) -> Result<LSubset, LSubError> {
        if !self.satisfies_subgroup_axioms() {
            return Err(LSubError::NotAnLSubgroup);
        }
        let (tip, tail, e) = (self.tip(), self.tail(), self.group.identity());
        Ok(self.map_values(|x| if x == e { tip } else { tail }))
    }

    /// `(μ∘η)(x) = ∨_{x=yz} μ(y) ∧ η(z)`.
    pub fn set_product(&self, other: &LSubset) -> Result<LSubset, LSubError> {
        self.check_carriers(other)?;
        let (g, l) = (&*self.group, &*self.lattice);
        let mut out = vec![l.bottom(); g.order()];
        for y in g.ids() {
            for z in g.ids() {
                let x = g.mul(y, z);
                out[x] = l.join(out[x], l.meet(self.values[y], other.values[z]));
            }
        }
        Ok(self.with_values(out))
    }

    /// `η̂(x) = ∨{a ≤ tip(η) : x ∈ ⟨η_a⟩}`, ranging over every lattice
    /// element below the tip.
    pub fn generated_by_levels(&self) -> LSubset {
        let (g, l) = (&*self.group, &*self.lattice);
        let tip = self.tip();
        let mut out = vec![l.bottom(); g.order()];
        for a in l.down_set(tip) {
            let h = g.subgroup_generated(self.level(a).iter());
            for x in h.iter() {
                out[x] = l.join(out[x], a);
            }
        }
        self.with_values(out)
    }

    /// Least L-subgroup of `G` above this valuation, by fixpoint propagation.
    pub fn lsubgroup_closure(&self) -> LSubset {
        let mut vals = self.values.clone();
        let seeds: Vec<usize> = self.group.ids().collect();
        propagate(&self.group, &self.lattice, &mut vals, seeds, None)
            .expect("unbounded propagation cannot fail");
        self.with_values(vals)
    }

    /// `Im(η)` is supstar.
    pub fn has_sup_property(&self) -> bool {
        self.lattice
            .is_supstar(&self.image())
            .expect("image is non-empty")
    }

    /// Sup-property by direct quantification over every non-empty subset of
    /// the group. Only for groups of order ≤ 16.
    pub fn has_sup_property_exhaustive(&self) -> bool {
        let n = self.group.order();
        assert!(n <= 16, "exhaustive sup-property limited to order 16");
        let l = &*self.lattice;
        (1u32..(1 << n)).all(|mask| {
            let members = (0..n).filter(|i| mask & (1 << i) != 0);
            let sup = members
                .clone()
                .fold(l.bottom(), |acc, i| l.join(acc, self.values[i]));
            members.clone().any(|i| self.values[i] == sup)
        })
    }

    /// `Im(η) ∪ Im(θ)` is supstar.
    pub fn jointly_supstar(&self, other: &LSubset) -> Result<bool, LSubError> {
        if !(Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice) {
            return Err(LSubError::MismatchedCarriers);
        }
        let mut im = self.image();
        im.extend(other.image());
        im.sort();
        im.dedup();
        Ok(self.lattice.is_supstar(&im)?)
    }

    /// One line per group element: `<cycle notation> = <lattice element>`.
    pub fn table(&self) -> Vec<(String, String)> {
        self.group
            .ids()
            .map(|x| {
                (
                    self.group.perm(x).to_string(),
                    self.lattice.name_of(self.values[x]).to_string(),
                )
            })
            .collect()
    }
}

impl fmt::Debug for LSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (k, v) in self.table() {
            m.entry(&k, &v);
        }
        m.finish()
    }
}

/// Raises `vals` to the least L-subgroup above it. Elements in `seeds` are
/// the ones whose values may have risen since the last fixpoint. With an
/// upper bound, stops with `Err(steps)` as soon as some value leaves it.
/// Returns the number of worklist steps taken.
pub(crate) fn propagate(
    g: &FiniteGroup,
    l: &FiniteLattice,
    vals: &mut [Elem],
    seeds: Vec<usize>,
    upper: Option<&[Elem]>,
) -> Result<u64, u64> {
    let bot = l.bottom();
    let n = g.order();
    let mut queued = vec![false; n];
    let mut queue = VecDeque::with_capacity(n);
    for s in seeds {
        if vals[s] != bot && !queued[s] {
            queued[s] = true;
            queue.push_back(s);
        }
    }
    let mut steps = 0u64;
    let raise = |vals: &mut [Elem], p: usize, by: Elem, queue: &mut VecDeque<usize>, queued: &mut [bool]| {
        if l.leq(by, vals[p]) {
            return true;
        }
        vals[p] = l.join(vals[p], by);
        if let Some(hi) = upper {
            if !l.leq(vals[p], hi[p]) {
                return false;
            }
        }
        if !queued[p] {
            queued[p] = true;
            queue.push_back(p);
        }
        true
    };
    while let Some(z) = queue.pop_front() {
        queued[z] = false;
        steps += 1;
        let v = vals[z];
        if !raise(vals, g.inv(z), v, &mut queue, &mut queued) {
            return Err(steps);
        }
        for w in 0..n {
            let vw = vals[w];
            if vw == bot {
                continue;
            }
            let m = l.meet(v, vw);
            if m == bot {
                continue;
            }
            if !raise(vals, g.mul(z, w), m, &mut queue, &mut queued)
                || !raise(vals, g.mul(w, z), m, &mut queue, &mut queued)
            {
                return Err(steps);
            }
        }
    }
    Ok(steps)
}

/// `⟨η⟩` inside `μ`: the smallest L-subgroup of `μ` containing `η`.
///
/// Seeded with the level-set formula and then closed under the subgroup
/// axioms. Over a distributive lattice the formula is already closed.
pub fn generated(eta: &LSubset, mu: &LSubset) -> Result<LSubset, LSubError> {
    eta.check_carriers(mu)?;
    if !eta.is_subset_of(mu) {
        return Err(LSubError::NotContained);
    }
    Ok(generated_unchecked(eta))
}

pub(crate) fn generated_unchecked(eta: &LSubset) -> LSubset {
    let seed = eta.generated_by_levels();
    let mut vals = seed.values;
    let seeds: Vec<usize> = eta.group.ids().collect();
    propagate(&eta.group, &eta.lattice, &mut vals, seeds, None).expect("unbounded");
    eta.with_values(vals)
}

/// `f(η)(y) = ∨_{x ∈ f⁻¹(y)} η(x)`; bottom on empty fibres.
pub fn image(f: &Homomorphism, eta: &LSubset) -> Result<LSubset, LSubError> {
    if !(Arc::ptr_eq(f.source(), &eta.group) || **f.source() == *eta.group) {
        return Err(LSubError::MismatchedCarriers);
    }
    let l = &*eta.lattice;
    let mut out = vec![l.bottom(); f.target().order()];
    for x in eta.group.ids() {
        let y = f.apply(x);
        out[y] = l.join(out[y], eta.values[x]);
    }
    Ok(LSubset {
        group: f.target().clone(),
        lattice: eta.lattice.clone(),
        values: out,
    })
}

/// `f⁻¹(ν)(x) = ν(f(x))`.
pub fn preimage(f: &Homomorphism, nu: &LSubset) -> Result<LSubset, LSubError> {
    if !(Arc::ptr_eq(f.target(), &nu.group) || **f.target() == *nu.group) {
        return Err(LSubError::MismatchedCarriers);
    }
    Ok(LSubset {
        group: f.source().clone(),
        lattice: nu.lattice.clone(),
        values: f.source().ids().map(|x| nu.values[f.apply(x)]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Homomorphism;
    use crate::instances::{self, example1, example3};
    use crate::perm::Perm;

    fn set(g: &FiniteGroup, xs: &[&str]) -> ElementSet {
        g.set_of(g.elements_of(xs).unwrap())
    }

    #[test]
    fn example1_levels_and_subgroup() {
        let ex = example1();
        let (g, l) = (ex.group(), ex.lattice());
        let e = |s| l.elem(s).unwrap();
        let z12 = set(g, &["()", "(1 2)"]);
        let h1 = g.subgroup_generated(g.elements_of(&["(1 2)", "(1 2 3)"]).unwrap());
        let h2 = g.subgroup_generated(g.elements_of(&["(1 2)", "(1 2 4)"]).unwrap());
        assert_eq!(ex.mu.level(e("u")), z12);
        assert_eq!(ex.eta.level(e("a")), h1);
        assert_eq!(ex.eta.level(e("b")), h2);
        assert_eq!(ex.eta.level(l.bottom()), g.all());
        assert!(ex.mu.is_lsubgroup().unwrap());
        assert!(ex.eta.is_lsubgroup_of(&ex.mu).unwrap());
        assert_eq!(ex.eta.tip(), e("u"));
        assert_eq!(ex.eta.tail(), e("l"));
    }

    #[test]
    fn example3_is_lsubgroup() {
        let ex = example3();
        assert!(ex.mu.is_lsubgroup().unwrap());
        assert!(ex.eta.is_lsubgroup_of(&ex.mu).unwrap());
    }

    #[test]
    fn closure_failure_is_detected() {
        let g = instances::s4();
        let l = instances::lattice_m();
        let (u, bot) = (l.elem("u").unwrap(), l.bottom());
        let mu = LSubset::constant(g.clone(), l.clone(), u);
        let picked = g.elements_of(&["()", "(1 2)", "(1 3)"]).unwrap();
        let eta = LSubset::from_fn(g.clone(), l.clone(), |x| if picked.contains(&x) { u } else { bot });
        // (1 2)(1 3) = (1 3 2) sits at the bottom
        assert_eq!(g.mul(picked[1], picked[2]), g.element("(1 3 2)").unwrap());
        assert!(!eta.is_lsubgroup_of(&mu).unwrap());
        assert!(!eta.satisfies_subgroup_axioms());
    }

    #[test]
    fn characteristic_and_trivial() {
        let g = instances::s4();
        let l = instances::lattice_m();
        let t12 = set(&g, &["()", "(1 2)"]);
        let chi = LSubset::characteristic(g.clone(), l.clone(), &t12).unwrap();
        assert_eq!(chi.tip(), l.elem("u").unwrap());
        assert_eq!(chi.tail(), l.elem("l").unwrap());
        assert_eq!(chi.level(l.top()), t12);
        assert_eq!(
            LSubset::characteristic(g.clone(), l.clone(), &set(&g, &["(1 2)"])).unwrap_err(),
            LSubError::NotASubgroup
        );
        let full = LSubset::characteristic(g.clone(), l.clone(), &g.all()).unwrap();
        assert!(full.values().iter().all(|&v| v == l.top()));

        let ex = example1();
        let triv = ex.eta.trivial_lsubgroup().unwrap();
        assert_eq!(triv.value(g.identity()), l.elem("u").unwrap());
        assert!(g.ids().skip(1).all(|x| triv.value(x) == l.elem("l").unwrap()));
        let c = LSubset::constant(g.clone(), l.clone(), l.elem("c").unwrap());
        assert_eq!(c.trivial_lsubgroup().unwrap(), c);
    }

    #[test]
    fn set_products() {
        let g = instances::s4();
        let l = instances::two();
        let h = set(&g, &["()", "(1 2)"]);
        let k = set(&g, &["()", "(3 4)"]);
        let hk = g.set_of(h.iter().flat_map(|x| k.iter().map(move |y| (x, y))).map(|(x, y)| g.mul(x, y)));
        assert_eq!(hk.len(), 4);
        let ch = LSubset::characteristic(g.clone(), l.clone(), &h).unwrap();
        let ck = LSubset::characteristic(g.clone(), l.clone(), &k).unwrap();
        let prod = ch.set_product(&ck).unwrap();
        assert_eq!(prod.level(l.top()), hk);

        let ex = example1();
        assert_eq!(ex.mu.set_product(&ex.mu).unwrap(), ex.mu);
        let m = ex.lattice();
        let a = m.elem("a").unwrap();
        let pt = LSubset::point(ex.group().clone(), m.clone(), LPoint::new(a, ex.group().identity()));
        let expect = ex.eta.map_values(|x| m.meet(a, ex.eta.value(x)));
        assert_eq!(pt.set_product(&ex.eta).unwrap(), expect);
    }

    #[test]
    fn generated_routes() {
        let ex = example1();
        assert_eq!(generated(&ex.eta, &ex.mu).unwrap(), ex.eta);
        assert_eq!(ex.eta.generated_by_levels(), ex.eta);

        let g = instances::s4();
        let l = instances::two();
        let s = g.elements_of(&["(1 2)", "(3 4)"]).unwrap();
        let crisp = LSubset::from_fn(g.clone(), l.clone(), |x| if s.contains(&x) { l.top() } else { l.bottom() });
        let top = LSubset::constant(g.clone(), l.clone(), l.top());
        let want = LSubset::characteristic(g.clone(), l.clone(), &g.subgroup_generated(s.iter().copied())).unwrap();
        assert_eq!(generated(&crisp, &top).unwrap(), want);
        assert_eq!(crisp.lsubgroup_closure(), want);

        let bottom = LSubset::constant(g.clone(), l.clone(), l.bottom());
        assert_eq!(generated(&crisp, &bottom).unwrap_err(), LSubError::NotContained);
    }

    #[test]
    fn sup_property() {
        let ex = example1();
        assert!(ex.mu.has_sup_property());
        assert!(!ex.eta.has_sup_property());
        assert!(!ex.eta.jointly_supstar(&ex.mu).unwrap());
        assert!(ex.mu.jointly_supstar(&ex.mu).unwrap());

        let g = instances::s3();
        let l = instances::lattice_m();
        let (a, b) = (l.elem("a").unwrap(), l.elem("b").unwrap());
        let mixed = LSubset::from_fn(g.clone(), l.clone(), |x| match x {
            0 => a,
            1 => b,
            _ => l.bottom(),
        });
        assert!(!mixed.has_sup_property());
        assert!(!mixed.has_sup_property_exhaustive());
        let mu = LSubset::from_fn(g.clone(), l.clone(), |x| if x == 0 { l.top() } else { a });
        assert!(mu.has_sup_property() && mu.has_sup_property_exhaustive());
    }

    fn quotient() -> Homomorphism {
        let s4 = instances::s4();
        let s3 = Arc::new(
            FiniteGroup::from_generators(
                "S4/V4",
                3,
                &[Perm::parse(3, "(1 2)").unwrap(), Perm::parse(3, "(1 2 3)").unwrap()],
            )
            .unwrap(),
        );
        Homomorphism::from_images(
            s4.clone(),
            s3.clone(),
            &[
                (s4.element("(1 2)").unwrap(), s3.element("(1 2)").unwrap()),
                (s4.element("(1 2 3 4)").unwrap(), s3.element("(1 3)").unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn images_and_preimages() {
        let ex = example3();
        let id = Homomorphism::identity(ex.group().clone());
        assert_eq!(image(&id, &ex.eta).unwrap(), ex.eta);

        let q = quotient();
        let ex3 = crate::instances::Instance {
            mu: ex.mu.clone(),
            eta: ex.eta.clone(),
        };
        let mu_q = image(&q, &ex3.mu).unwrap();
        let l = ex3.lattice();
        let t = q.apply(ex3.group().element("(1 2)").unwrap());
        assert_eq!(mu_q.value(t), l.elem("(d,0)").unwrap());
        assert_eq!(mu_q.value(q.target().identity()), l.elem("(u,1)").unwrap());

        for s in [&ex3.mu, &ex3.eta] {
            assert!(s.is_subset_of(&preimage(&q, &image(&q, s).unwrap()).unwrap()));
            assert_eq!(&preimage(&id, &image(&id, s).unwrap()).unwrap(), s);
        }
        let nu = image(&q, &ex3.eta).unwrap();
        assert_eq!(image(&q, &preimage(&q, &nu).unwrap()).unwrap(), nu);
        assert!(image(&q, &nu).is_err());
    }
}
