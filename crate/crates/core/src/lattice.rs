//! Finite bounded lattices with precomputed order, join and meet tables.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("cover `{lower} < {upper}` references an undeclared element")]
    DanglingCover { lower: String, upper: String },
    #[error("cover relation has a cycle through `{0}`")]
    Cyclic(String),
    #[error("poset has no global bottom or top element")]
    NoBounds,
    #[error("`{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("element `{0}` does not belong to this lattice")]
    ForeignElement(String),
    #[error("supstar test needs a non-empty subset")]
    EmptySubset,
}

/// Index of an element inside its [`FiniteLattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u16);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    fn new(i: usize) -> Self {
        Elem(i as u16)
    }
}

/// A finite bounded lattice. Immutable once built.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    name: String,
    names: Vec<String>,
    index: HashMap<String, Elem>,
    covers: Vec<(Elem, Elem)>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.names == other.names && self.leq == other.leq)
    }
}

impl Eq for FiniteLattice {}

impl FiniteLattice {
    /// Builds the lattice whose order is the reflexive-transitive closure of `covers`.
    pub fn build<S: AsRef<str>>(
        name: &str,
        elements: &[S],
        covers: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let n = elements.len();
        if n == 0 {
            return Err(LatticeError::NoBounds);
        }
        assert!(n <= u16::MAX as usize, "lattice too large");
        let mut index = HashMap::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            let e = e.as_ref().to_string();
            if index.insert(e.clone(), Elem::new(i)).is_some() {
                return Err(LatticeError::DuplicateName(e));
            }
            names.push(e);
        }
        let mut cover_ids = Vec::with_capacity(covers.len());
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let (lo, hi) = (lo.as_ref(), hi.as_ref());
            match (index.get(lo), index.get(hi)) {
                (Some(&a), Some(&b)) => {
                    if a == b {
                        return Err(LatticeError::Cyclic(lo.to_string()));
                    }
                    leq[a.index() * n + b.index()] = true;
                    cover_ids.push((a, b));
                }
                _ => {
                    return Err(LatticeError::DanglingCover {
                        lower: lo.to_string(),
                        upper: hi.to_string(),
                    })
                }
            }
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::Cyclic(names[i].clone()));
                }
            }
        }

        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq[b * n + x]))
            .ok_or(LatticeError::NoBounds)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x * n + t]))
            .ok_or(LatticeError::NoBounds)?;

        let mut join = vec![Elem(0); n * n];
        let mut meet = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                let ub: Vec<usize> = (0..n)
                    .filter(|&z| leq[a * n + z] && leq[b * n + z])
                    .collect();
                let lub = ub
                    .iter()
                    .copied()
                    .find(|&z| ub.iter().all(|&w| leq[z * n + w]))
                    .ok_or_else(|| {
                        LatticeError::NotALattice(names[a].clone(), names[b].clone(), "join")
                    })?;
                let lb: Vec<usize> = (0..n)
                    .filter(|&z| leq[z * n + a] && leq[z * n + b])
                    .collect();
                let glb = lb
                    .iter()
                    .copied()
                    .find(|&z| lb.iter().all(|&w| leq[w * n + z]))
                    .ok_or_else(|| {
                        LatticeError::NotALattice(names[a].clone(), names[b].clone(), "meet")
                    })?;
                join[a * n + b] = Elem::new(lub);
                meet[a * n + b] = Elem::new(glb);
            }
        }

        Ok(FiniteLattice {
            name: name.to_string(),
            names,
            index,
            covers: cover_ids,
            leq,
            join,
            meet,
            bottom: Elem::new(bottom),
            top: Elem::new(top),
        })
    }

    /// The `n`-element chain `0 < 1 < ... < n-1`.
    pub fn chain(name: &str, n: usize) -> Self {
        let elems: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<(String, String)> = (1..n)
            .map(|i| ((i - 1).to_string(), i.to_string()))
            .collect();
        Self::build(name, &elems, &covers).expect("chains are lattices")
    }

    /// Componentwise-ordered product. Elements are named `(x,y)` and listed
    /// with the first factor varying slowest.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let (n1, n2) = (self.len(), other.len());
        let n = n1 * n2;
        let pair = |i: usize, j: usize| i * n2 + j;
        let mut names = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        for i in 0..n1 {
            for j in 0..n2 {
                let nm = format!("({},{})", self.names[i], other.names[j]);
                index.insert(nm.clone(), Elem::new(pair(i, j)));
                names.push(nm);
            }
        }
        let mut covers = Vec::new();
        for i in 0..n1 {
            for &(lo, hi) in &other.covers {
                covers.push((Elem::new(pair(i, lo.index())), Elem::new(pair(i, hi.index()))));
            }
        }
        for &(lo, hi) in &self.covers {
            for j in 0..n2 {
                covers.push((Elem::new(pair(lo.index(), j)), Elem::new(pair(hi.index(), j))));
            }
        }
        covers.sort();
        let mut leq = vec![false; n * n];
        let mut join = vec![Elem(0); n * n];
        let mut meet = vec![Elem(0); n * n];
        for a in 0..n {
            let (a1, a2) = (Elem::new(a / n2), Elem::new(a % n2));
            for b in 0..n {
                let (b1, b2) = (Elem::new(b / n2), Elem::new(b % n2));
                leq[a * n + b] = self.leq(a1, b1) && other.leq(a2, b2);
                join[a * n + b] = Elem::new(pair(
                    self.join(a1, b1).index(),
                    other.join(a2, b2).index(),
                ));
                meet[a * n + b] = Elem::new(pair(
                    self.meet(a1, b1).index(),
                    other.meet(a2, b2).index(),
                ));
            }
        }
        FiniteLattice {
            name: format!("{}x{}", self.name, other.name),
            names,
            index,
            covers,
            leq,
            join,
            meet,
            bottom: Elem::new(pair(self.bottom.index(), other.bottom.index())),
            top: Elem::new(pair(self.top.index(), other.top.index())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.len()).map(Elem::new)
    }

    pub fn covers(&self) -> &[(Elem, Elem)] {
        &self.covers
    }

    pub fn elem(&self, name: &str) -> Result<Elem, LatticeError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| LatticeError::ForeignElement(name.to_string()))
    }

    pub fn name_of(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.index() < self.len()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.index() * self.len() + b.index()]
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Join of a set of elements; the empty join is the bottom.
    pub fn sup_of<I: IntoIterator<Item = Elem>>(&self, set: I) -> Result<Elem, LatticeError> {
        let mut acc = self.bottom;
        for e in set {
            if !self.contains(e) {
                return Err(LatticeError::ForeignElement(format!("#{}", e.index())));
            }
            acc = self.join(acc, e);
        }
        Ok(acc)
    }

    /// Meet of a set of elements; the empty meet is the top.
    pub fn inf_of<I: IntoIterator<Item = Elem>>(&self, set: I) -> Elem {
        set.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    /// Elements below `a` (inclusive), in declaration order.
    pub fn down_set(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&x| self.leq(x, a))
    }

    pub fn is_chain(&self) -> bool {
        self.incomparable_pair().is_none()
    }

    pub fn incomparable_pair(&self) -> Option<(Elem, Elem)> {
        let els: Vec<Elem> = self.elements().collect();
        chain_witness(self, &els)
    }

    /// Every non-empty subset contains its supremum. A finite subset fails
    /// exactly when some pair does, so the pairwise test is used.
    pub fn is_upper_well_ordered(&self) -> bool {
        self.is_chain()
    }

    /// Every non-empty `A ⊆ set` contains `∨A`. Pairwise form.
    pub fn is_supstar(&self, set: &[Elem]) -> Result<bool, LatticeError> {
        if set.is_empty() {
            return Err(LatticeError::EmptySubset);
        }
        if let Some(&e) = set.iter().find(|&&e| !self.contains(e)) {
            return Err(LatticeError::ForeignElement(format!("#{}", e.index())));
        }
        Ok(chain_witness(self, set).is_none())
    }

    /// Supstar test by enumerating every non-empty subset. Limited to 20 distinct
    /// elements.
    pub fn is_supstar_exhaustive(&self, set: &[Elem]) -> Result<bool, LatticeError> {
        if set.is_empty() {
            return Err(LatticeError::EmptySubset);
        }
        let mut xs = set.to_vec();
        xs.sort();
        xs.dedup();
        assert!(xs.len() <= 20, "exhaustive supstar limited to 20 elements");
        for mask in 1u32..(1 << xs.len()) {
            let members = xs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e);
            let sup = self.sup_of(members.clone())?;
            if !members.clone().any(|e| e == sup) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// First triple (declaration order) with `a∧(b∨c) ≠ (a∧b)∨(a∧c)`.
    pub fn distributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

fn chain_witness(l: &FiniteLattice, set: &[Elem]) -> Option<(Elem, Elem)> {
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            if !l.comparable(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

impl fmt::Display for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.name, self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> FiniteLattice {
        FiniteLattice::build("2", &["0", "1"], &[("0", "1")]).unwrap()
    }

    pub(crate) fn m() -> FiniteLattice {
        FiniteLattice::build(
            "M",
            &["l", "f", "a", "b", "c", "d", "u"],
            &[
                ("l", "f"),
                ("l", "a"),
                ("l", "b"),
                ("l", "c"),
                ("f", "d"),
                ("a", "d"),
                ("b", "d"),
                ("c", "d"),
                ("d", "u"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_chain() {
        let l = two();
        let (z, o) = (l.elem("0").unwrap(), l.elem("1").unwrap());
        assert_eq!(l.join(z, o), o);
        assert_eq!(l.meet(z, o), z);
        assert_eq!(l.bottom(), z);
        assert_eq!(l.top(), o);
        assert!(l.is_chain());
        assert!(l.is_upper_well_ordered());
        assert!(l.is_distributive());
    }

    #[test]
    fn m_joins_and_meets() {
        let l = m();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(l.join(e("a"), e("b")), e("d"));
        assert_eq!(l.join(e("b"), e("c")), e("d"));
        assert_eq!(l.join(e("f"), e("a")), e("d"));
        assert_eq!(l.meet(e("a"), e("b")), e("l"));
        assert_eq!(l.bottom(), e("l"));
        assert_eq!(l.top(), e("u"));
        assert!(!l.is_chain());
        assert!(!l.is_upper_well_ordered());
    }

    #[test]
    fn m_is_not_distributive() {
        let l = m();
        let (a, b, c) = l.distributivity_witness().unwrap();
        let lhs = l.meet(a, l.join(b, c));
        let rhs = l.join(l.meet(a, b), l.meet(a, c));
        assert_ne!(lhs, rhs);
        // the a,b,c diamond: a∧(b∨c) = a, (a∧b)∨(a∧c) = l
        let e = |s| l.elem(s).unwrap();
        assert_eq!(l.meet(e("a"), l.join(e("b"), e("c"))), e("a"));
        assert_eq!(l.join(l.meet(e("a"), e("b")), l.meet(e("a"), e("c"))), e("l"));
    }

    #[test]
    fn sup_of_sets() {
        let l = m();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(l.sup_of([]).unwrap(), e("l"));
        assert_eq!(l.sup_of([e("a"), e("b")]).unwrap(), e("d"));
        assert_eq!(l.sup_of([e("u")]).unwrap(), e("u"));
        assert!(matches!(
            l.sup_of([Elem::new(40)]),
            Err(LatticeError::ForeignElement(_))
        ));
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            FiniteLattice::build::<&str>("x", &["x", "y"], &[]).unwrap_err(),
            LatticeError::NoBounds
        );
        assert_eq!(
            FiniteLattice::build("x", &["x", "x"], &[("x", "x")]).unwrap_err(),
            LatticeError::DuplicateName("x".into())
        );
        assert!(matches!(
            FiniteLattice::build("x", &["x", "y"], &[("x", "z")]).unwrap_err(),
            LatticeError::DanglingCover { .. }
        ));
        assert!(matches!(
            FiniteLattice::build("x", &["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err(),
            LatticeError::Cyclic(_)
        ));
        // bowtie: 0 < a,b < c,d < 1, so a∨b has two minimal upper bounds
        let err = FiniteLattice::build(
            "bowtie",
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, LatticeError::NotALattice(_, _, "join")));
    }

    #[test]
    fn products() {
        let l = m().product(&two());
        assert_eq!(l.len(), 14);
        assert_eq!(l.name(), "Mx2");
        for nm in ["(u,1)", "(d,0)", "(f,0)"] {
            l.elem(nm).unwrap();
        }
        assert!(!l.is_chain());
        assert!(!l.is_distributive());

        let sq = two().product(&two());
        assert_eq!(sq.len(), 4);
        assert_eq!(
            sq.join(sq.elem("(0,1)").unwrap(), sq.elem("(1,0)").unwrap()),
            sq.elem("(1,1)").unwrap()
        );
        assert!(sq.is_distributive());

        let one = FiniteLattice::chain("1", 1);
        let mm = m().product(&one);
        let base = m();
        assert_eq!(mm.len(), 7);
        for a in base.elements() {
            for b in base.elements() {
                let (pa, pb) = (Elem::new(a.index()), Elem::new(b.index()));
                assert_eq!(mm.join(pa, pb).index(), base.join(a, b).index());
                assert_eq!(mm.leq(pa, pb), base.leq(a, b));
            }
        }
    }

    #[test]
    fn product_matches_rebuild_from_covers() {
        let p = m().product(&two());
        let names: Vec<&str> = p.elements().map(|e| p.name_of(e)).collect();
        let covers: Vec<(&str, &str)> = p
            .covers()
            .iter()
            .map(|&(a, b)| (p.name_of(a), p.name_of(b)))
            .collect();
        let rebuilt = FiniteLattice::build("Mx2", &names, &covers).unwrap();
        assert_eq!(rebuilt, p);
        assert_eq!(rebuilt.join, p.join);
        assert_eq!(rebuilt.meet, p.meet);
    }

    #[test]
    fn supstar() {
        let l = m();
        let e = |s| l.elem(s).unwrap();
        assert!(l.is_supstar(&[e("u"), e("d")]).unwrap());
        assert!(!l.is_supstar(&[e("a"), e("b")]).unwrap());
        assert!(l.is_supstar(&[e("c")]).unwrap());
        assert_eq!(l.is_supstar(&[]), Err(LatticeError::EmptySubset));
        assert!(l.is_supstar_exhaustive(&[e("u"), e("d")]).unwrap());
        assert!(!l.is_supstar_exhaustive(&[e("a"), e("b")]).unwrap());
    }
}
