//! Conjugates by L-points, normalizers, normal closures and the
//! normal / abnormal / contranormal / maximal classification of an
//! L-subgroup `η` inside an L-group `μ`.

use thiserror::Error;

use crate::lattice::Elem;
use crate::lsub::{generated_unchecked, LPoint, LSubError, LSubset};
use crate::search::{self, BudgetExceeded};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error(transparent)]
    LSub(#[from] LSubError),
    #[error("L-point {0} is not in the parent")]
    PointNotInParent(String),
    #[error("not an L-subgroup of the parent")]
    NotAnLSubgroup,
    #[error("not a proper L-subgroup")]
    NotProper,
    #[error("search budget exceeded after {0} steps")]
    BudgetExceeded(u64),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl From<BudgetExceeded> for TheoryError {
    fn from(b: BudgetExceeded) -> Self {
        TheoryError::BudgetExceeded(b.steps)
    }
}

/// Outcome of the maximality search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    /// Not maximal. The witness is an L-subgroup strictly in between, absent
    /// when the subject is not proper.
    NotMaximal(Option<LSubset>),
    BudgetExceeded,
}

impl Maximality {
    pub fn is_true(&self) -> bool {
        matches!(self, Maximality::Maximal)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Maximality::Maximal => "true",
            Maximality::NotMaximal(_) => "false",
            Maximality::BudgetExceeded => "budget-exceeded",
        }
    }
}

/// `μ = η₀ ⊇ η₁ ⊇ …` with `ηᵢ` the normal closure of `η` in `ηᵢ₋₁`.
#[derive(Debug, Clone)]
pub struct NormalClosureSeries {
    pub stages: Vec<LSubset>,
    pub stabilized: bool,
}

impl NormalClosureSeries {
    /// First `m` with `ηₘ = η`.
    pub fn defect(&self, eta: &LSubset) -> Option<usize> {
        self.stages.iter().position(|s| s == eta)
    }
}

/// An L-subgroup `η` of an L-group `μ`, checked once on construction.
#[derive(Debug, Clone)]
pub struct Pair {
    eta: LSubset,
    mu: LSubset,
    flip_wu: bool,
}

impl Pair {
    pub fn new(eta: LSubset, mu: LSubset) -> Result<Self, TheoryError> {
        eta.check_carriers(&mu)?;
        if !mu.is_lsubgroup()? {
            return Err(TheoryError::NotAnLSubgroup);
        }
        if !eta.is_subset_of(&mu) {
            return Err(LSubError::NotContained.into());
        }
        if !eta.is_lsubgroup_of(&mu)? {
            return Err(TheoryError::NotAnLSubgroup);
        }
        Ok(Pair::trusted(eta, mu))
    }

    /// Skips validation. For pairs that come out of the search.
    pub fn trusted(eta: LSubset, mu: LSubset) -> Self {
        debug_assert!(eta.is_subset_of(&mu));
        Pair {
            eta,
            mu,
            flip_wu: false,
        }
    }

    /// Deliberately broken Wu check, for testing the verification harness.
    #[doc(hidden)]
    pub fn with_flipped_wu(mut self) -> Self {
        self.flip_wu = true;
        self
    }

    pub fn eta(&self) -> &LSubset {
        &self.eta
    }

    pub fn mu(&self) -> &LSubset {
        &self.mu
    }

    /// Distinct tip and tail, and `η ≠ μ`.
    pub fn is_proper(&self) -> bool {
        self.eta.tip() != self.eta.tail() && self.eta != self.mu
    }

    /// `η^{a_z}(x) = a ∧ η(zxz⁻¹)`.
    pub fn conjugate(&self, p: LPoint) -> Result<LSubset, TheoryError> {
        if !p.belongs_to(&self.mu) {
            let l = self.mu.lattice();
            let g = self.mu.group();
            return Err(TheoryError::PointNotInParent(format!(
                "{}_{}",
                l.name_of(p.level),
                g.perm(p.at)
            )));
        }
        Ok(self.conj(p.level, p.at))
    }

    fn conj(&self, a: Elem, z: usize) -> LSubset {
        let g = self.eta.group();
        let l = self.eta.lattice();
        self.eta.map_values(|x| l.meet(a, self.eta.value(g.conj(z, x))))
    }

    /// Every L-point of `μ`, grouped by group element.
    fn points(&self) -> impl Iterator<Item = LPoint> + '_ {
        let l = self.mu.lattice();
        self.mu
            .group()
            .ids()
            .flat_map(move |z| l.down_set(self.mu.value(z)).map(move |a| LPoint::new(a, z)))
    }

    /// `η(yxy⁻¹) ≥ η(x) ∧ μ(y)` for all `x, y`.
    pub fn is_normal_wu(&self) -> bool {
        let g = self.eta.group();
        let l = self.eta.lattice();
        g.ids().all(|x| {
            g.ids().all(|y| {
                let lhs = self.eta.value(g.conj(y, x));
                let rhs = l.meet(self.eta.value(x), self.mu.value(y));
                if self.flip_wu {
                    l.leq(lhs, rhs)
                } else {
                    l.leq(rhs, lhs)
                }
            })
        })
    }

    /// Every conjugate `η^{a_z}` lies in `η`.
    pub fn is_normal_by_conjugates(&self) -> bool {
        self.points()
            .all(|p| self.conj(p.level, p.at).is_subset_of(&self.eta))
    }

    /// Each non-empty `η_t` is normal in `μ_t`.
    pub fn is_normal_by_levels(&self) -> bool {
        let g = self.eta.group();
        self.eta.lattice().elements().all(|t| {
            let h = self.eta.level(t);
            h.is_empty()
                || g.is_normal_in(&self.mu.level(t), &h)
                    .expect("levels of an L-subgroup are nested subgroups")
        })
    }

    /// Wu normality. All three characterizations are evaluated and must
    /// agree.
    pub fn is_normal(&self) -> Result<bool, TheoryError> {
        let wu = self.is_normal_wu();
        let conj = self.is_normal_by_conjugates();
        let lev = self.is_normal_by_levels();
        if wu != conj || wu != lev {
            return Err(TheoryError::Inconsistent(format!(
                "normality: inequality {wu}, conjugates {conj}, levels {lev}"
            )));
        }
        Ok(wu)
    }

    /// `N(η)(x) = ∨{a ≤ μ(x) : η^{a_x} ⊆ η}`.
    pub fn normalizer(&self) -> LSubset {
        let l = self.mu.lattice();
        self.mu.map_values(|x| {
            l.down_set(self.mu.value(x))
                .filter(|&a| self.conj(a, x).is_subset_of(&self.eta))
                .fold(l.bottom(), |acc, a| l.join(acc, a))
        })
    }

    /// `μημ⁻¹(x) = ∨_{x = zyz⁻¹} η(y) ∧ μ(z)`.
    pub fn conjugate_closure_formula(&self) -> LSubset {
        let g = self.eta.group();
        let l = self.eta.lattice();
        let mut out = vec![l.bottom(); g.order()];
        for z in g.ids() {
            for y in g.ids() {
                let x = g.conj(z, y);
                out[x] = l.join(out[x], l.meet(self.eta.value(y), self.mu.value(z)));
            }
        }
        self.eta.with_values(out)
    }

    /// `∪_{a_z ∈ μ} η^{a_z}`.
    pub fn conjugate_union(&self) -> LSubset {
        let l = self.eta.lattice();
        let mut out = vec![l.bottom(); self.eta.group().order()];
        for p in self.points() {
            let c = self.conj(p.level, p.at);
            for (o, &v) in out.iter_mut().zip(c.values()) {
                *o = l.join(*o, v);
            }
        }
        self.eta.with_values(out)
    }

    /// The conjugate `μημ⁻¹` of `η` in `μ`, by the displayed formula and as
    /// the union of all conjugates. The two must agree.
    pub fn conjugate_closure(&self) -> Result<LSubset, TheoryError> {
        let f = self.conjugate_closure_formula();
        if f != self.conjugate_union() {
            return Err(TheoryError::Inconsistent(
                "conjugate closure differs from the union of conjugates".into(),
            ));
        }
        Ok(f)
    }

    /// `η^μ = ⟨μημ⁻¹⟩`.
    pub fn normal_closure(&self) -> Result<LSubset, TheoryError> {
        Ok(generated_unchecked(&self.conjugate_closure()?))
    }

    pub fn normal_closure_series(&self) -> Result<NormalClosureSeries, TheoryError> {
        let cap = self.mu.lattice().len() * self.mu.group().order();
        let mut stages = vec![self.mu.clone()];
        while stages.len() <= cap {
            let prev = stages.last().expect("non-empty");
            let next = Pair::trusted(self.eta.clone(), prev.clone()).normal_closure()?;
            if &next == prev {
                return Ok(NormalClosureSeries {
                    stages,
                    stabilized: true,
                });
            }
            if !(self.eta.is_subset_of(&next) && next.is_subset_of(prev)) {
                return Err(TheoryError::Inconsistent(
                    "normal closure series is not descending".into(),
                ));
            }
            stages.push(next);
        }
        Err(TheoryError::Inconsistent(format!(
            "normal closure series did not stabilize within {cap} steps"
        )))
    }

    pub fn subnormal_defect(&self) -> Result<Option<usize>, TheoryError> {
        Ok(self.normal_closure_series()?.defect(&self.eta))
    }

    /// `⟨η, η^{a_x}⟩`.
    pub fn join_with_conjugate(&self, p: LPoint) -> LSubset {
        generated_unchecked(&self.eta.union(&self.conj(p.level, p.at)))
    }

    /// An L-point `a_x ∈ μ` with `a_x ∉ ⟨η, η^{a_x}⟩`.
    pub fn abnormality_witness(&self) -> Option<LPoint> {
        let l = self.mu.lattice();
        self.points()
            .find(|&p| !l.leq(p.level, self.join_with_conjugate(p).value(p.at)))
    }

    /// `a_x ∈ ⟨η, η^{a_x}⟩` for every L-point `a_x ∈ μ`, bottom included.
    pub fn is_abnormal(&self) -> bool {
        self.abnormality_witness().is_none()
    }

    /// `η^μ = μ`.
    pub fn is_contranormal(&self) -> Result<bool, TheoryError> {
        Ok(self.normal_closure()? == self.mu)
    }

    /// The original definition: no L-subgroup of `μ` other than `μ` contains
    /// every conjugate of `η`.
    pub fn is_contranormal_by_containers(&self, budget: u64) -> Result<bool, TheoryError> {
        let lower = self.conjugate_union();
        let mut other = false;
        search::for_each_between(&lower, &self.mu, budget, |v| {
            other = v != self.mu.values();
            !other
        })?;
        Ok(!other)
    }

    pub fn is_self_normalizing(&self) -> bool {
        self.normalizer() == self.eta
    }

    pub fn is_maximal(&self, budget: u64) -> Result<Maximality, TheoryError> {
        if !self.is_proper() {
            return Err(TheoryError::NotProper);
        }
        Ok(match search::intermediate(&self.eta, &self.mu, budget) {
            Ok(None) => Maximality::Maximal,
            Ok(Some(theta)) => Maximality::NotMaximal(Some(theta)),
            Err(_) => Maximality::BudgetExceeded,
        })
    }

    pub fn classify(&self, budget: u64) -> Result<ClassificationReport, TheoryError> {
        self.classify_named("eta", "mu", budget)
    }

    pub fn classify_named(
        &self,
        subject: &str,
        parent: &str,
        budget: u64,
    ) -> Result<ClassificationReport, TheoryError> {
        let normal = self.is_normal()?;
        let abnormal = self.is_abnormal();
        let normal_closure = self.normal_closure()?;
        let contranormal = normal_closure == self.mu;
        if let Ok(by_def) = self.is_contranormal_by_containers(budget) {
            if by_def != contranormal {
                return Err(TheoryError::Inconsistent(format!(
                    "contranormal by closure {contranormal}, by containers {by_def}"
                )));
            }
        }
        let normalizer = self.normalizer();
        let proper = self.is_proper();
        let maximal = if proper {
            self.is_maximal(budget)?
        } else {
            Maximality::NotMaximal(None)
        };
        let r = ClassificationReport {
            subject: subject.to_string(),
            parent: parent.to_string(),
            group: self.mu.group().name().to_string(),
            lattice: self.mu.lattice().name().to_string(),
            distributive: self.mu.lattice().is_distributive(),
            is_lsubgroup: true,
            tip: self.eta.tip(),
            tail: self.eta.tail(),
            proper,
            normal,
            abnormal,
            contranormal,
            self_normalizing: normalizer == self.eta,
            subnormal_defect: self.subnormal_defect()?,
            maximal,
            normalizer,
            normal_closure,
            eta: self.eta.clone(),
        };
        r.check(&self.mu)?;
        Ok(r)
    }
}

/// Everything [`Pair::classify`] finds out about `η` in `μ`.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub subject: String,
    pub parent: String,
    pub group: String,
    pub lattice: String,
    pub distributive: bool,
    pub is_lsubgroup: bool,
    pub tip: Elem,
    pub tail: Elem,
    pub proper: bool,
    pub normal: bool,
    pub abnormal: bool,
    pub contranormal: bool,
    pub self_normalizing: bool,
    pub subnormal_defect: Option<usize>,
    pub maximal: Maximality,
    pub normalizer: LSubset,
    pub normal_closure: LSubset,
    pub eta: LSubset,
}

impl ClassificationReport {
    fn check(&self, mu: &LSubset) -> Result<(), TheoryError> {
        let is_mu = &self.eta == mu;
        let mut bad = Vec::new();
        if self.normal && self.abnormal && !is_mu {
            bad.push("normal and abnormal but not the parent");
        }
        if self.abnormal && !(self.self_normalizing && self.contranormal) {
            bad.push("abnormal but not self-normalizing and contranormal");
        }
        if self.contranormal && self.proper && self.subnormal_defect.is_some() {
            bad.push("proper contranormal yet subnormal");
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(TheoryError::Inconsistent(bad.join("; ")))
        }
    }
}

pub fn conjugate(eta: &LSubset, p: LPoint, mu: &LSubset) -> Result<LSubset, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.conjugate(p)
}

pub fn is_normal(eta: &LSubset, mu: &LSubset) -> Result<bool, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.is_normal()
}

pub fn normalizer(eta: &LSubset, mu: &LSubset) -> Result<LSubset, TheoryError> {
    Ok(Pair::new(eta.clone(), mu.clone())?.normalizer())
}

pub fn conjugate_closure(eta: &LSubset, mu: &LSubset) -> Result<LSubset, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.conjugate_closure()
}

pub fn normal_closure(eta: &LSubset, mu: &LSubset) -> Result<LSubset, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.normal_closure()
}

pub fn normal_closure_series(
    eta: &LSubset,
    mu: &LSubset,
) -> Result<NormalClosureSeries, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.normal_closure_series()
}

pub fn subnormal_defect(eta: &LSubset, mu: &LSubset) -> Result<Option<usize>, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.subnormal_defect()
}

pub fn is_abnormal(eta: &LSubset, mu: &LSubset) -> Result<bool, TheoryError> {
    Ok(Pair::new(eta.clone(), mu.clone())?.is_abnormal())
}

pub fn is_contranormal(eta: &LSubset, mu: &LSubset) -> Result<bool, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.is_contranormal()
}

pub fn is_self_normalizing(eta: &LSubset, mu: &LSubset) -> Result<bool, TheoryError> {
    Ok(Pair::new(eta.clone(), mu.clone())?.is_self_normalizing())
}

pub fn is_maximal(eta: &LSubset, mu: &LSubset, budget: u64) -> Result<Maximality, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.is_maximal(budget)
}

/// All L-subgroups of `μ`, in search order.
pub fn enumerate_lsubgroups(mu: &LSubset, budget: u64) -> Result<Vec<LSubset>, TheoryError> {
    if !mu.is_lsubgroup()? {
        return Err(TheoryError::NotAnLSubgroup);
    }
    Ok(search::enumerate(mu, budget)?)
}

pub fn classify(
    eta: &LSubset,
    mu: &LSubset,
    budget: u64,
) -> Result<ClassificationReport, TheoryError> {
    Pair::new(eta.clone(), mu.clone())?.classify(budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ElementSet, FiniteGroup};
    use crate::instances::{self, example1, example3};
    use crate::search::DEFAULT_BUDGET;
    use std::sync::Arc;

    fn gen(g: &FiniteGroup, xs: &[&str]) -> ElementSet {
        g.subgroup_generated(g.elements_of(xs).unwrap())
    }

    fn lift(g: &Arc<FiniteGroup>, h: &ElementSet) -> LSubset {
        LSubset::characteristic(g.clone(), instances::two(), h).unwrap()
    }

    fn crisp(g: &Arc<FiniteGroup>, h: &ElementSet, k: &ElementSet) -> Pair {
        Pair::new(lift(g, h), lift(g, k)).unwrap()
    }

    fn ex1() -> Pair {
        let ex = example1();
        Pair::new(ex.eta, ex.mu).unwrap()
    }

    fn ex3() -> Pair {
        let ex = example3();
        Pair::new(ex.eta, ex.mu).unwrap()
    }

    fn point(p: &Pair, a: &str, x: &str) -> LPoint {
        LPoint::new(p.mu().lattice().elem(a).unwrap(), p.mu().group().element(x).unwrap())
    }

    #[test]
    fn example1_conjugate_table() {
        let p = ex1();
        let g = p.mu().group().clone();
        let l = p.mu().lattice().clone();
        let c = p.conjugate(point(&p, "d", "(3 4)")).unwrap();
        let z = gen(&g, &["(1 2)"]);
        let h1 = gen(&g, &["(1 2)", "(1 2 3)"]);
        let h2 = gen(&g, &["(1 2)", "(1 2 4)"]);
        for x in g.ids() {
            let want = if z.contains(x) {
                "d"
            } else if h2.contains(x) {
                "a"
            } else if h1.contains(x) {
                "b"
            } else {
                "l"
            };
            assert_eq!(l.name_of(c.value(x)), want, "{}", g.perm(x));
        }
        let j = p.join_with_conjugate(point(&p, "d", "(3 4)"));
        assert_eq!(j.value(g.element("(3 4)").unwrap()), l.elem("d").unwrap());
    }

    #[test]
    fn conjugate_by_top_at_identity_is_identity() {
        for p in [ex1(), ex3()] {
            let e = LPoint::new(p.mu().tip(), p.mu().group().identity());
            assert_eq!(&p.conjugate(e).unwrap(), p.eta());
        }
    }

    #[test]
    fn example3_conjugate_table() {
        let p = ex3();
        let g = p.mu().group().clone();
        let l = p.mu().lattice().clone();
        let c = p.conjugate(point(&p, "(d,0)", "(1 2 3)")).unwrap();
        let v4 = gen(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let d1 = gen(&g, &["(2 4)", "(1 2 3 4)"]);
        let d2 = gen(&g, &["(1 2)", "(1 3 2 4)"]);
        let d3 = gen(&g, &["(2 3)", "(1 3 4 2)"]);
        for x in g.ids() {
            let want = if v4.contains(x) {
                "(d,0)"
            } else if d1.contains(x) {
                "(b,0)"
            } else if d2.contains(x) {
                "(c,0)"
            } else if d3.contains(x) {
                "(a,0)"
            } else {
                "(f,0)"
            };
            assert_eq!(l.name_of(c.value(x)), want, "{}", g.perm(x));
        }
    }

    #[test]
    fn point_outside_parent() {
        let p = ex1();
        assert!(matches!(
            p.conjugate(point(&p, "u", "(3 4)")),
            Err(TheoryError::PointNotInParent(_))
        ));
    }

    #[test]
    fn pair_validation() {
        let ex = example1();
        assert_eq!(
            Pair::new(ex.mu.clone(), ex.eta.clone()).unwrap_err(),
            TheoryError::LSub(LSubError::NotContained)
        );
        let g = ex.group();
        let bad = ex.eta.map_values(|x| {
            if x == g.element("(1 3)").unwrap() {
                ex.lattice().elem("d").unwrap()
            } else {
                ex.eta.value(x)
            }
        });
        assert_eq!(Pair::new(bad, ex.mu).unwrap_err(), TheoryError::NotAnLSubgroup);
    }

    #[test]
    fn example3_not_normal_at_dihedral_levels() {
        let p = ex3();
        let g = p.mu().group().clone();
        let l = p.mu().lattice().clone();
        assert!(!p.is_normal().unwrap());
        let dihedral = [
            ("(a,0)", gen(&g, &["(2 4)", "(1 2 3 4)"])),
            ("(b,0)", gen(&g, &["(1 2)", "(1 3 2 4)"])),
            ("(c,0)", gen(&g, &["(2 3)", "(1 3 4 2)"])),
        ];
        for (t, d) in dihedral {
            let t = l.elem(t).unwrap();
            assert_eq!(p.eta().level(t), d);
            assert_eq!(p.mu().level(t), g.all());
            assert!(!g.is_normal_in(&g.all(), &d).unwrap());
        }
        // at the levels (a,1), (b,1), (c,1) only V4 survives
        for t in ["(a,1)", "(b,1)", "(c,1)"] {
            let t = l.elem(t).unwrap();
            assert_eq!(p.eta().level(t), gen(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]));
        }
    }

    #[test]
    fn normality_examples() {
        let ex = example1();
        let triv = ex.eta.trivial_lsubgroup().unwrap();
        assert_eq!(triv.tail(), ex.lattice().bottom());
        assert!(Pair::new(triv, ex.mu.clone()).unwrap().is_normal().unwrap());
        let s4 = instances::s4();
        let v4 = gen(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(crisp(&s4, &v4, &s4.all()).is_normal().unwrap());
        assert!(!crisp(&s4, &gen(&s4, &["(1 2)"]), &s4.all()).is_normal().unwrap());
    }

    #[test]
    fn flipped_wu_is_caught() {
        let ex = example1();
        let triv = ex.eta.trivial_lsubgroup().unwrap();
        let p = Pair::new(triv, ex.mu).unwrap();
        assert!(p.is_normal().unwrap());
        let p = p.with_flipped_wu();
        assert!(matches!(p.is_normal(), Err(TheoryError::Inconsistent(_))));
    }

    #[test]
    fn example2_normalizer() {
        let p = ex1();
        let g = p.mu().group().clone();
        let l = p.mu().lattice().clone();
        let n = p.normalizer();
        let x23 = g.element("(2 3)").unwrap();
        assert_eq!(n.value(x23), l.elem("a").unwrap());
        assert_eq!(n.value(x23), p.eta().value(x23));
        // f and c meet both a and b in l, so f_(34) and c_(34) normalize η
        let x34 = g.element("(3 4)").unwrap();
        for a in ["f", "c"] {
            assert!(p.conjugate(point(&p, a, "(3 4)")).unwrap().is_subset_of(p.eta()));
        }
        assert_eq!(n.value(x34), l.elem("d").unwrap());
        assert_ne!(&n, p.eta());
        assert!(!p.is_self_normalizing());
    }

    #[test]
    fn normalizer_examples() {
        let s4 = instances::s4();
        let v4 = gen(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let p = crisp(&s4, &v4, &s4.all());
        assert_eq!(&p.normalizer(), p.mu());
        let t = gen(&s4, &["(1 2)"]);
        let p = crisp(&s4, &t, &s4.all());
        assert_eq!(p.normalizer(), lift(&s4, &gen(&s4, &["(1 2)", "(3 4)"])));
        assert!(!p.is_self_normalizing());
        let p = Pair::new(p.mu().clone(), p.mu().clone()).unwrap();
        assert!(p.is_self_normalizing());
    }

    #[test]
    fn conjugate_closures() {
        let s4 = instances::s4();
        let v4 = gen(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let p = crisp(&s4, &v4, &s4.all());
        assert_eq!(&p.conjugate_closure().unwrap(), p.eta());

        let p = crisp(&s4, &gen(&s4, &["(1 2)"]), &s4.all());
        let transpositions = s4.set_of(s4.ids().filter(|&x| {
            let c = s4.perm(x).cycles();
            c.len() == 1 && c[0].len() == 2
        }));
        assert_eq!(transpositions.len(), 6);
        let want = transpositions.union(&s4.trivial());
        let two = instances::two();
        let expect = p
            .eta()
            .map_values(|x| if want.contains(x) { two.top() } else { two.bottom() });
        assert_eq!(p.conjugate_closure().unwrap(), expect);

        let p = ex1();
        let l = p.mu().lattice().clone();
        let cc = p.conjugate_closure().unwrap();
        let x = s4.element("(1 2 3)").unwrap();
        assert_eq!(
            p.conjugate(point(&p, "d", "(3 4)")).unwrap().value(x),
            l.elem("b").unwrap()
        );
        assert!(l.leq(l.elem("b").unwrap(), cc.value(x)));
        assert!(l.leq(l.elem("a").unwrap(), cc.value(x)));
    }

    #[test]
    fn normal_closures() {
        let s4 = instances::s4();
        let v4 = gen(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let p = crisp(&s4, &v4, &s4.all());
        assert_eq!(&p.normal_closure().unwrap(), p.eta());
        let p = crisp(&s4, &gen(&s4, &["(1 2)"]), &s4.all());
        assert_eq!(&p.normal_closure().unwrap(), p.mu());
        let p = ex1();
        let nc = p.normal_closure().unwrap();
        assert_eq!(&nc, p.mu());
        assert_eq!(nc.value(s4.identity()), p.eta().value(s4.identity()));
        assert!(p.is_contranormal().unwrap());
        assert!(p.is_contranormal_by_containers(DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn defects() {
        let s4 = instances::s4();
        let v4 = gen(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let all = s4.all();
        assert_eq!(crisp(&s4, &all, &all).subnormal_defect().unwrap(), Some(0));
        assert_eq!(crisp(&s4, &v4, &all).subnormal_defect().unwrap(), Some(1));
        let dt = gen(&s4, &["(1 2)(3 4)"]);
        let series = crisp(&s4, &dt, &all).normal_closure_series().unwrap();
        assert!(series.stabilized);
        assert_eq!(series.stages.len(), 3);
        assert_eq!(series.stages[1], lift(&s4, &v4));
        assert_eq!(series.defect(&lift(&s4, &dt)), Some(2));
        assert_eq!(ex1().subnormal_defect().unwrap(), None);
    }

    #[test]
    fn abnormality() {
        let s4 = instances::s4();
        let v4 = gen(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let all = s4.all();
        assert!(crisp(&s4, &all, &all).is_abnormal());
        let p = crisp(&s4, &v4, &all);
        assert!(!p.is_abnormal());
        let w = p.abnormality_witness().unwrap();
        assert!(!v4.contains(w.at));
        let h1 = gen(&s4, &["(1 2)", "(1 2 3)"]);
        assert!(crisp(&s4, &h1, &all).is_abnormal());

        let p = ex1();
        assert!(p.join_with_conjugate(point(&p, "d", "(3 4)")).value(s4.element("(3 4)").unwrap())
            == p.mu().lattice().elem("d").unwrap());
        let w = p.abnormality_witness().unwrap();
        assert_eq!(s4.perm(w.at).to_string(), "(3 4)");
        assert_eq!(p.mu().lattice().name_of(w.level), "f");
        assert!(!p.is_abnormal());
        let ex = example1();
        let p = Pair::new(ex.mu.clone(), ex.mu).unwrap();
        assert!(p.is_abnormal());
    }

    #[test]
    fn contranormality() {
        let s4 = instances::s4();
        let all = s4.all();
        let dt = gen(&s4, &["(1 2)(3 4)"]);
        let p = crisp(&s4, &dt, &all);
        assert!(!p.is_contranormal().unwrap());
        assert!(!p.is_contranormal_by_containers(DEFAULT_BUDGET).unwrap());
        let p = crisp(&s4, &all, &all);
        assert!(p.is_contranormal().unwrap());
        assert!(p.is_contranormal_by_containers(DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn maximality() {
        let p = ex3();
        assert_eq!(p.is_maximal(DEFAULT_BUDGET).unwrap(), Maximality::Maximal);

        let s4 = instances::s4();
        let all = s4.all();
        let p = crisp(&s4, &s4.trivial(), &all);
        match p.is_maximal(DEFAULT_BUDGET).unwrap() {
            Maximality::NotMaximal(Some(theta)) => {
                assert!(p.eta().is_proper_subset_of(&theta) && theta.is_proper_subset_of(p.mu()));
                assert!(theta.is_lsubgroup().unwrap());
            }
            other => panic!("{other:?}"),
        }
        let a4 = gen(&s4, &["(1 2 3)", "(2 3 4)"]);
        assert!(crisp(&s4, &a4, &all).is_maximal(DEFAULT_BUDGET).unwrap().is_true());
        assert_eq!(
            crisp(&s4, &all, &all).is_maximal(DEFAULT_BUDGET).unwrap_err(),
            TheoryError::NotProper
        );
        assert_eq!(p.is_maximal(3).unwrap(), Maximality::BudgetExceeded);
    }

    #[test]
    fn enumeration_counts() {
        let z2 = Arc::new(FiniteGroup::cyclic("Z2", 2));
        assert_eq!(enumerate_lsubgroups(&lift(&z2, &z2.all()), DEFAULT_BUDGET).unwrap().len(), 3);
        let s3 = instances::s3();
        let two = instances::two();
        let bottom = LSubset::constant(s3.clone(), two.clone(), two.bottom());
        assert_eq!(enumerate_lsubgroups(&bottom, DEFAULT_BUDGET).unwrap(), vec![bottom.clone()]);
        let all = enumerate_lsubgroups(&lift(&s3, &s3.all()), DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 7);
        let mut normal = 0;
        let mut abnormal = 0;
        for eta in &all {
            let p = Pair::new(eta.clone(), lift(&s3, &s3.all())).unwrap();
            normal += p.is_normal().unwrap() as usize;
            abnormal += p.is_abnormal() as usize;
        }
        assert_eq!((normal, abnormal), (4, 4));
    }

    #[test]
    fn classify_reports() {
        let r = ex1().classify(DEFAULT_BUDGET).unwrap();
        assert!(!r.normal && r.contranormal);
        assert!(!r.abnormal && !r.self_normalizing);
        assert_eq!(r.subnormal_defect, None);
        assert!(!r.distributive);

        let ex = example1();
        let r = classify(&ex.mu, &ex.mu, DEFAULT_BUDGET).unwrap();
        assert!(r.normal && r.abnormal && !r.proper);
        assert_eq!(r.subnormal_defect, Some(0));

        let s4 = instances::s4();
        let a4 = gen(&s4, &["(1 2 3)", "(2 3 4)"]);
        let r = crisp(&s4, &a4, &s4.all()).classify(DEFAULT_BUDGET).unwrap();
        assert!(r.normal && !r.abnormal && r.maximal.is_true());
        assert_eq!(r.subnormal_defect, Some(1));

        let r = ex3().classify(DEFAULT_BUDGET).unwrap();
        assert!(r.maximal.is_true() && !r.normal && r.contranormal);
    }
}
