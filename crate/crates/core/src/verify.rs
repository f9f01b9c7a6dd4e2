//! Verification suites: golden values from the worked examples, the theorem
//! suite over every enumerated pair, and the crisp bridge against the
//! classical oracles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::group::{ElementSet, FiniteGroup, Homomorphism};
use crate::instances;
use crate::lattice::{Elem, FiniteLattice};
use crate::lsub::{self, generated_unchecked, LPoint, LSubset};
use crate::perm::Perm;
use crate::search::{self, DEFAULT_BUDGET};
use crate::theory::Pair;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    PaperExamples,
    Theorems,
    CrispBridge,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::PaperExamples, Suite::Theorems, Suite::CrispBridge];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PaperExamples => "paper-examples",
            Suite::Theorems => "theorems",
            Suite::CrispBridge => "crisp-bridge",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub budget: u64,
    /// Worker threads. `None` reads `LGROUP_WORKERS`, else uses all cores.
    pub workers: Option<usize>,
    /// Run normality with the Wu inequality flipped.
    pub mutate_wu: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
            workers: None,
            mutate_wu: false,
        }
    }
}

/// Failures kept per property; the rest are only counted.
pub const SAMPLES_PER_PROPERTY: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub property: String,
    pub case: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Tally {
    fn add(&mut self, o: Tally) {
        self.checked += o.checked;
        self.failed += o.failed;
        self.skipped += o.skipped;
    }
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub suite: Suite,
    pub run: usize,
    pub passed: usize,
    pub skipped: usize,
    /// The first few failures of each property, in case order.
    pub failures: Vec<Failure>,
    pub properties: BTreeMap<String, Tally>,
    /// Totals per group/lattice instance (theorem suite only).
    pub instances: BTreeMap<String, Tally>,
    pub wall: Duration,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn failed(&self) -> usize {
        self.run - self.passed
    }

    pub fn tally(&self, property: &str) -> Tally {
        self.properties.get(property).copied().unwrap_or_default()
    }
}

/// Collects check outcomes for one unit of work.
#[derive(Default)]
struct Log {
    failures: Vec<Failure>,
    properties: BTreeMap<String, Tally>,
    instances: BTreeMap<String, Tally>,
}

impl Log {
    fn check(&mut self, property: &str, case: impl FnOnce() -> String, ok: bool) {
        self.expect(property, case, ok, || ("true".into(), "false".into()));
    }

    fn expect(
        &mut self,
        property: &str,
        case: impl FnOnce() -> String,
        ok: bool,
        detail: impl FnOnce() -> (String, String),
    ) {
        let t = self.properties.entry(property.to_string()).or_default();
        t.checked += 1;
        if !ok {
            t.failed += 1;
            let (expected, actual) = detail();
            if t.failed > SAMPLES_PER_PROPERTY {
                return;
            }
            self.failures.push(Failure {
                property: property.to_string(),
                case: case(),
                expected,
                actual,
            });
        }
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, property: &str, case: &str, want: T, got: T) {
        let ok = want == got;
        self.expect(property, || case.to_string(), ok, || {
            (want.to_string(), got.to_string())
        });
    }

    fn skip(&mut self, property: &str) {
        self.properties.entry(property.to_string()).or_default().skipped += 1;
    }

    fn merge(&mut self, other: Log) {
        for f in other.failures {
            let kept = self.failures.iter().filter(|g| g.property == f.property).count();
            if kept < SAMPLES_PER_PROPERTY {
                self.failures.push(f);
            }
        }
        for (k, v) in other.properties {
            self.properties.entry(k).or_default().add(v);
        }
        for (k, v) in other.instances {
            self.instances.entry(k).or_default().add(v);
        }
    }

    fn finish(self, suite: Suite, start: Instant) -> SuiteResult {
        let run: usize = self.properties.values().map(|t| t.checked).sum();
        let skipped: usize = self.properties.values().map(|t| t.skipped).sum();
        let failed: usize = self.properties.values().map(|t| t.failed).sum();
        SuiteResult {
            suite,
            run,
            passed: run - failed,
            skipped,
            failures: self.failures,
            properties: self.properties,
            instances: self.instances,
            wall: start.elapsed(),
        }
    }
}

fn pool(opts: &Options) -> rayon::ThreadPool {
    let n = opts
        .workers
        .or_else(|| {
            std::env::var("LGROUP_WORKERS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .expect("thread pool")
}

pub fn run(suite: Suite, opts: &Options) -> SuiteResult {
    let start = Instant::now();
    let log = match suite {
        Suite::PaperExamples => worked_examples(opts),
        Suite::Theorems => pool(opts).install(|| theorems(opts)),
        Suite::CrispBridge => pool(opts).install(|| crisp_bridge(opts)),
    };
    log.finish(suite, start)
}

fn pair(eta: LSubset, mu: LSubset, opts: &Options) -> Pair {
    let p = Pair::trusted(eta, mu);
    if opts.mutate_wu {
        p.with_flipped_wu()
    } else {
        p
    }
}

fn subgroup(g: &FiniteGroup, gens: &[&str]) -> ElementSet {
    g.subgroup_generated(g.elements_of(gens).expect("known elements"))
}

fn named_table(s: &LSubset, pick: impl Fn(usize) -> &'static str) -> Result<(), String> {
    let l = s.lattice();
    let g = s.group();
    for x in g.ids() {
        let want = pick(x);
        if l.name_of(s.value(x)) != want {
            return Err(format!("{} at {}", l.name_of(s.value(x)), g.perm(x)));
        }
    }
    Ok(())
}

fn worked_examples(opts: &Options) -> Log {
    let mut log = Log::default();
    let budget = opts.budget;

    let ex = instances::example1();
    let (g, l) = (ex.group().clone(), ex.lattice().clone());
    let e = |s: &str| l.elem(s).expect("element of M");
    log.equal("join", "M: a v b", "d", l.name_of(l.join(e("a"), e("b"))));
    log.equal("sup", "M: sup {}", "l", l.name_of(l.sup_of([]).expect("empty sup")));
    let z = subgroup(&g, &["(1 2)"]);
    let h1 = subgroup(&g, &["(1 2)", "(1 2 3)"]);
    let h2 = subgroup(&g, &["(1 2)", "(1 2 4)"]);
    log.check("level", || "ex1: mu_u = <(1 2)>".into(), ex.mu.level(e("u")) == z);
    log.check("level", || "ex1: eta_a = H1".into(), ex.eta.level(e("a")) == h1);
    log.check("level", || "ex1: eta_b = H2".into(), ex.eta.level(e("b")) == h2);
    let valid = ex.eta.is_lsubgroup_of(&ex.mu) == Ok(true) && ex.mu.is_lsubgroup() == Ok(true);
    log.check("lsubgroup", || "ex1: eta in L(mu)".into(), valid);
    if !valid {
        return log;
    }
    let p = pair(ex.eta.clone(), ex.mu.clone(), opts);
    let x34 = g.element("(3 4)").expect("(3 4)");
    let d34 = LPoint::new(e("d"), x34);
    let c = p.conjugate(d34).expect("d_(34) lies in mu");
    let table = named_table(&c, |x| {
        if z.contains(x) {
            "d"
        } else if h2.contains(x) {
            "a"
        } else if h1.contains(x) {
            "b"
        } else {
            "l"
        }
    });
    log.expect("conjugate", || "ex1: eta^{d_(34)} table".into(), table.is_ok(), || {
        ("reference table".into(), table.clone().err().unwrap_or_default())
    });
    log.check(
        "conjugate",
        || "ex1: (3 4) = (2 4)(1 3 2)(1 2 4)".into(),
        g.mul(g.mul(g.element("(2 4)").unwrap(), g.element("(1 3 2)").unwrap()), g.element("(1 2 4)").unwrap()) == x34,
    );
    let j = p.join_with_conjugate(d34);
    log.equal("generated", "ex1: <eta, eta^{d_(34)}>((3 4))", "d", l.name_of(j.value(x34)));
    let witness = p.abnormality_witness();
    log.expect("abnormal", || "ex1: eta abnormal in mu".into(), witness.is_none(), || {
        let w = witness.expect("witness");
        ("true".into(), format!("false, {}_{} not in <eta, eta^{{a_x}}>", l.name_of(w.level), g.perm(w.at)))
    });

    let n = p.normalizer();
    let x23 = g.element("(2 3)").expect("(2 3)");
    log.equal("normalizer", "ex2: N(eta)((2 3))", "a", l.name_of(n.value(x23)));
    let diff: Vec<String> = g
        .ids()
        .filter(|&x| n.value(x) != ex.eta.value(x))
        .map(|x| format!("N({})={} eta={}", g.perm(x), l.name_of(n.value(x)), l.name_of(ex.eta.value(x))))
        .collect();
    log.expect("normalizer", || "ex2: N(eta) = eta".into(), diff.is_empty(), || {
        ("N(eta) = eta".into(), diff.join(", "))
    });

    let triv = ex.eta.trivial_lsubgroup().expect("eta is an L-subgroup");
    match pair(triv, ex.mu.clone(), opts).is_normal() {
        Ok(v) => log.check("normal", || "ex1: trivial L-subgroup of eta normal in mu".into(), v),
        Err(err) => log.expect("normal", || "ex1: trivial L-subgroup of eta normal in mu".into(), false, || ("true".into(), err.to_string())),
    }

    let nc = p.normal_closure();
    log.check("contranormal", || "ex4: normal closure = mu".into(), nc.as_ref() == Ok(&ex.mu));
    match p.is_contranormal_by_containers(budget) {
        Ok(v) => log.check("contranormal", || "ex4: no other container of all conjugates".into(), v),
        Err(_) => log.skip("contranormal"),
    }
    let x123 = g.element("(1 2 3)").expect("(1 2 3)");
    let b = p.conjugate(d34).expect("point").value(x123);
    log.equal("conjugate", "ex4: eta^{d_(34)}((1 2 3))", "b", l.name_of(b));
    log.equal("conjugate", "ex4: eta^{u_e}((1 2 3))", "a", l.name_of(p.conjugate(LPoint::new(e("u"), g.identity())).expect("point").value(x123)));

    let ex = instances::example3();
    let (g, l) = (ex.group().clone(), ex.lattice().clone());
    let e = |s: &str| l.elem(s).expect("element of Mx2");
    log.equal("product", "ex3: |M x 2|", 14, l.len());
    let valid = ex.eta.is_lsubgroup_of(&ex.mu) == Ok(true) && ex.mu.is_lsubgroup() == Ok(true);
    log.check("lsubgroup", || "ex3: eta in L(mu)".into(), valid);
    if !valid {
        return log;
    }
    let p = pair(ex.eta.clone(), ex.mu.clone(), opts);
    match p.is_normal() {
        Ok(v) => log.check("normal", || "ex3: eta not normal in mu".into(), !v),
        Err(err) => log.expect("normal", || "ex3: eta not normal in mu".into(), false, || ("false".into(), err.to_string())),
    }
    let v4 = subgroup(&g, &["(1 2)(3 4)", "(1 3)(2 4)"]);
    let d1 = subgroup(&g, &["(2 4)", "(1 2 3 4)"]);
    let d2 = subgroup(&g, &["(1 2)", "(1 3 2 4)"]);
    let d3 = subgroup(&g, &["(2 3)", "(1 3 4 2)"]);
    for (t, d) in [("(a,0)", &d1), ("(b,0)", &d2), ("(c,0)", &d3)] {
        let ok = ex.eta.level(e(t)) == *d
            && ex.mu.level(e(t)) == g.all()
            && g.is_normal_in(&g.all(), d) == Ok(false);
        log.check("normal", || format!("ex3: eta_{t} is a non-normal D4 in mu_{t} = S4"), ok);
    }
    for t in ["(a,1)", "(b,1)", "(c,1)"] {
        log.check("level", || format!("ex3: eta_{t} = V4"), ex.eta.level(e(t)) == v4);
    }
    let c = p
        .conjugate(LPoint::new(e("(d,0)"), g.element("(1 2 3)").expect("(1 2 3)")))
        .expect("point");
    let table = named_table(&c, |x| {
        if v4.contains(x) {
            "(d,0)"
        } else if d1.contains(x) {
            "(b,0)"
        } else if d2.contains(x) {
            "(c,0)"
        } else if d3.contains(x) {
            "(a,0)"
        } else {
            "(f,0)"
        }
    });
    log.expect("conjugate", || "ex3: eta^{(d,0)_(1 2 3)} table".into(), table.is_ok(), || {
        ("reference table".into(), table.clone().err().unwrap_or_default())
    });
    let m = p.is_maximal(budget).map(|m| m.label().to_string()).unwrap_or_else(|e| e.to_string());
    if m == "budget-exceeded" {
        log.skip("maximal");
    } else {
        log.equal("maximal", "ex3: eta maximal in mu", "true".to_string(), m);
    }
    let witness = p.abnormality_witness();
    log.expect("abnormal", || "ex3: eta abnormal in mu".into(), witness.is_none(), || {
        let w = witness.expect("witness");
        ("true".into(), format!("false, {}_{} not in <eta, eta^{{a_x}}>", l.name_of(w.level), g.perm(w.at)))
    });
    let pt = LPoint::new(e("(d,0)"), g.element("(1 2 3)").expect("(1 2 3)"));
    let j = p.join_with_conjugate(pt);
    log.check(
        "abnormal",
        || "ex3: (d,0)_(1 2 3) in <eta, eta^{(d,0)_(1 2 3)}>".into(),
        l.leq(pt.level, j.value(pt.at)),
    );
    log
}

/// One group with its test homomorphisms.
struct Carrier {
    group: Arc<FiniteGroup>,
    homs: Vec<Homomorphism>,
}

fn hom(src: &Arc<FiniteGroup>, name: &str, degree: usize, gens: &[&str], images: &[&str]) -> Homomorphism {
    let perms: Vec<Perm> = gens.iter().map(|s| Perm::parse(degree, s).expect("cycle")).collect();
    let tgt = Arc::new(FiniteGroup::from_generators(name, degree, &perms).expect("target group"));
    let pairs: Vec<(usize, usize)> = src
        .generators()
        .iter()
        .zip(images)
        .map(|(&g, img)| (g, tgt.element(img).expect("image")))
        .collect();
    Homomorphism::from_images(src.clone(), tgt, &pairs).expect("homomorphism")
}

fn carriers() -> Vec<(Carrier, Vec<Arc<FiniteLattice>>)> {
    let s3 = instances::s3();
    let d4 = instances::d4();
    let z6 = instances::z6();
    let a4 = instances::a4();
    let s4 = instances::s4();
    let rich = vec![instances::two(), instances::three(), instances::lattice_m()];
    let two = vec![instances::two()];
    vec![
        (
            Carrier {
                homs: vec![
                    Homomorphism::identity(s3.clone()),
                    hom(&s3, "S3/A3", 2, &["(1 2)"], &["(1 2)", "()"]),
                ],
                group: s3,
            },
            rich.clone(),
        ),
        (
            Carrier {
                homs: vec![
                    Homomorphism::identity(d4.clone()),
                    hom(&d4, "D4/Z", 4, &["(1 2)", "(3 4)"], &["(1 2)", "(3 4)"]),
                ],
                group: d4,
            },
            rich.clone(),
        ),
        (
            Carrier {
                homs: vec![
                    Homomorphism::identity(z6.clone()),
                    hom(&z6, "Z6/Z2", 3, &["(1 2 3)"], &["(1 2 3)"]),
                ],
                group: z6,
            },
            rich,
        ),
        (
            Carrier {
                homs: vec![
                    Homomorphism::identity(a4.clone()),
                    hom(&a4, "A4/V4", 3, &["(1 2 3)"], &["(1 2 3)", "(1 3 2)"]),
                ],
                group: a4,
            },
            two.clone(),
        ),
        (
            Carrier {
                homs: vec![
                    Homomorphism::identity(s4.clone()),
                    hom(&s4, "S4/V4", 3, &["(1 2)", "(1 2 3)"], &["(1 2)", "(1 3)"]),
                ],
                group: s4,
            },
            two,
        ),
    ]
}

struct Unit<'a> {
    carrier: &'a Carrier,
    lattice: Arc<FiniteLattice>,
    index: usize,
    mu: LSubset,
}

fn theorems(opts: &Options) -> Log {
    let carriers = carriers();
    let mut units = Vec::new();
    let mut log = Log::default();
    for (c, lattices) in &carriers {
        for l in lattices {
            let top = LSubset::constant(c.group.clone(), l.clone(), l.top());
            match search::enumerate(&top, opts.budget) {
                Ok(all) => {
                    for (index, mu) in all.into_iter().enumerate() {
                        units.push(Unit {
                            carrier: c,
                            lattice: l.clone(),
                            index,
                            mu,
                        });
                    }
                }
                Err(_) => log.skip("enumerate"),
            }
        }
    }
    let logs: Vec<Log> = units.par_iter().map(|u| theorem_unit(u, opts)).collect();
    for l in logs {
        log.merge(l);
    }
    log
}

fn image_of(s: &LSubset) -> Vec<Elem> {
    s.image()
}

fn subset_of(a: &[Elem], b: &[Elem]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn theorem_unit(u: &Unit, opts: &Options) -> Log {
    let mut log = Log::default();
    let g = &*u.carrier.group;
    let l = &*u.lattice;
    let mu = &u.mu;
    let tag = format!("{}/{}/mu{}", g.name(), l.name(), u.index);
    let all = match search::enumerate(mu, opts.budget) {
        Ok(v) => v,
        Err(_) => {
            log.skip("enumerate");
            return log;
        }
    };
    let chain = l.is_chain();
    let k = all.len();
    let sub: Vec<Vec<bool>> = all
        .iter()
        .map(|a| all.iter().map(|b| a.is_subset_of(b)).collect())
        .collect();
    let mu_index = all.iter().position(|t| t == mu).expect("mu is among its own L-subgroups");
    let normal_in_mu: Vec<Option<bool>> = all
        .iter()
        .map(|t| pair(t.clone(), mu.clone(), opts).is_normal().ok())
        .collect();
    let images_mu: Vec<LSubset> = u
        .carrier
        .homs
        .iter()
        .map(|f| lsub::image(f, mu).expect("carrier matches"))
        .collect();
    let mu_sup = mu.has_sup_property();
    let im_mu = image_of(mu);

    for (j, eta) in all.iter().enumerate() {
        let case = || format!("{tag}/eta{j}");
        let p = pair(eta.clone(), mu.clone(), opts);
        log.check("lsubgroup_two_routes", case, eta.is_lsubgroup_of(mu) == Ok(true));

        let normal = match p.is_normal() {
            Ok(v) => v,
            Err(e) => {
                log.expect("normal_three_routes", case, false, || ("agreement".into(), e.to_string()));
                continue;
            }
        };
        log.check("normal_three_routes", case, true);
        let cc = match p.conjugate_closure() {
            Ok(v) => v,
            Err(e) => {
                log.expect("conjugate_closure_union", case, false, || ("agreement".into(), e.to_string()));
                continue;
            }
        };
        log.check("conjugate_closure_union", case, true);
        let nc = generated_unchecked(&cc);
        let contranormal = &nc == mu;
        let abnormal = p.is_abnormal();
        let n = p.normalizer();
        let proper = p.is_proper();
        let defect = match p.subnormal_defect() {
            Ok(d) => d,
            Err(e) => {
                log.expect("normal_closure_series", case, false, || ("stabilizes".into(), e.to_string()));
                continue;
            }
        };
        let is_mu = eta == mu;
        let maximal = proper
            && (0..k).all(|t| t == j || t == mu_index || !(sub[j][t] && sub[t][mu_index]));
        let joint = eta.jointly_supstar(mu).expect("same lattice");
        let tip = eta.tip();

        log.check("abn_nor", case, !(normal && abnormal) || is_mu);
        log.check("norm_abn", case, !abnormal || n == *eta);
        log.check("abn_contra", case, !abnormal || contranormal);
        log.check("con_sub", case, !(contranormal && normal) || is_mu);
        log.check("con_sub", case, !(contranormal && proper) || defect.is_none());
        if maximal {
            let prop = if joint { "max_normal_or_abnormal_supstar" } else { "max_normal_or_abnormal" };
            log.check(prop, case, normal || abnormal);
            log.check("max_normal_or_contranormal", case, normal || contranormal);
        }
        match p.is_contranormal_by_containers(opts.budget) {
            Ok(v) => log.check("contranormal_two_routes", case, v == contranormal),
            Err(_) => log.skip("contranormal_two_routes"),
        }

        // normalizer and normal closure against the enumerated interval
        let n_ok = n.is_lsubgroup_of(mu) == Ok(true)
            && eta.is_subset_of(&n)
            && Pair::trusted(eta.clone(), n.clone()).is_normal_wu();
        let largest = (0..k).filter(|&t| sub[j][t]).all(|t| {
            !Pair::trusted(eta.clone(), all[t].clone()).is_normal_wu() || all[t].is_subset_of(&n)
        });
        log.check("def_norm", case, n_ok && largest);
        let nc_ok = nc.is_lsubgroup_of(mu) == Ok(true)
            && eta.is_subset_of(&nc)
            && normal_in_mu
                .iter()
                .zip(&all)
                .zip(&sub[j])
                .all(|((nm, t), &above)| !(above && *nm == Some(true)) || nc.is_subset_of(t))
            && Pair::trusted(nc.clone(), mu.clone()).is_normal_wu();
        log.check("normal_closure_smallest", case, nc_ok);
        log.check("normal_closure_tip", case, nc.tip() == tip);

        // level characterizations
        let levels: Vec<Elem> = l.down_set(tip).collect();
        let crisp_abn = levels.iter().all(|&t| {
            g.classical_is_abnormal(&mu.level(t), &eta.level(t)).expect("nested levels")
        });
        let crisp_contra = levels.iter().all(|&t| {
            g.classical_is_contranormal(&mu.level(t), &eta.level(t)).expect("nested levels")
        });
        if tip == mu.tip() && crisp_abn {
            log.check("levsub1_forward", case, abnormal);
        }
        if chain && abnormal {
            log.check("levsub1_converse", case, crisp_abn);
        }
        if chain && joint && contranormal {
            log.check("lev_contra_forward", case, crisp_contra);
        }
        if tip == mu.tip() && crisp_contra {
            log.check("lev_contra_converse", case, contranormal);
        }

        // sup-type lemmas
        let im_eta = image_of(eta);
        let mut im_both = im_eta.clone();
        im_both.extend(&im_mu);
        if joint {
            log.check("nc_sup", case, subset_of(&image_of(&cc), &im_both));
            if chain {
                log.check("nc_sup", case, cc.has_sup_property());
            }
        }
        check_gen_sup(&mut log, &cc, case);
        log.check("gen", case, {
            let f = cc.generated_by_levels();
            f.is_lsubgroup() == Ok(true) && f == nc
        });
        log.check("lsubgroup_two_routes", case, cc.is_lsubgroup().is_ok());

        // conjugates
        for z in g.ids() {
            for a in l.down_set(mu.value(z)) {
                let pt = LPoint::new(a, z);
                let c = p.conjugate(pt).expect("point of mu");
                let pcase = || format!("{tag}/eta{j}/{}_{}", l.name_of(a), g.perm(z));
                let ctip = c.tip();
                let lv = l.down_set(ctip).all(|t| {
                    c.level(t) == g.conjugate_set(&eta.level(t), g.inv(z))
                });
                log.check("lvl_conj", pcase, lv && ctip == l.meet(a, tip));
                let inv = p.conjugate(LPoint::new(a, g.inv(z))).expect("inverse point");
                log.check("conj_inv", pcase, c.is_subset_of(eta) == inv.is_subset_of(eta));
                if joint && im_mu.contains(&a) {
                    let un = eta.union(&c);
                    log.check("conj_sup", pcase, subset_of(&image_of(&c), &im_both) && un.has_sup_property());
                }
                for (f, fmu) in u.carrier.homs.iter().zip(&images_mu) {
                    let fe = lsub::image(f, eta).expect("carrier");
                    let fc = lsub::image(f, &c).expect("carrier");
                    let fz = f.apply(z);
                    let h = f.target();
                    let want = fe.map_values(|y| l.meet(a, fe.value(h.conj(fz, y))));
                    log.check("hom_conj", pcase, fc == want && l.leq(a, fmu.value(fz)));
                }
            }
        }

        // homomorphisms
        for (f, fmu) in u.carrier.homs.iter().zip(&images_mu) {
            let h = f.target();
            let hcase = || format!("{tag}/eta{j}/{}", h.name());
            let fe = lsub::image(f, eta).expect("carrier");
            let lev = l.down_set(tip).all(|t| f.image_set(&eta.level(t)).is_subset(&fe.level(t)));
            log.check("hom_lev", hcase, lev);
            let fcc = lsub::image(f, &cc).expect("carrier");
            log.check("gen_hom", hcase, generated_unchecked(&fcc) == lsub::image(f, &nc).expect("carrier"));
            let back = lsub::preimage(f, &fcc).expect("carrier");
            log.check(
                "gen_hom",
                hcase,
                generated_unchecked(&back) == lsub::preimage(f, &generated_unchecked(&fcc)).expect("carrier"),
            );
            if f.is_surjective() && mu_sup && abnormal {
                let q = pair(fe, fmu.clone(), opts);
                log.check("hom_abn", hcase, q.is_abnormal());
            }
        }

    }
    let mut total = Tally::default();
    for t in log.properties.values() {
        total.add(*t);
    }
    log.instances.insert(format!("{}/{}", g.name(), l.name()), total);
    log
}

/// `⟨σ_b⟩ ⊆ ⟨σ⟩_b` for all `b ≤ tip(σ)`, with equality under the
/// sup-property.
fn check_gen_sup(log: &mut Log, s: &LSubset, case: impl Fn() -> String) {
    let g = s.group();
    let l = s.lattice();
    let gen = generated_unchecked(s);
    let sup = s.has_sup_property();
    for b in l.down_set(s.tip()) {
        let lhs = g.subgroup_generated(s.level(b).iter());
        let rhs = gen.level(b);
        log.check("gen_sup", &case, lhs.is_subset(&rhs) && (!sup || lhs == rhs));
    }
}

fn crisp_bridge(opts: &Options) -> Log {
    let groups = [instances::s3(), instances::d4(), instances::a4(), instances::s4()];
    let two = instances::two();
    let mut work = Vec::new();
    for g in &groups {
        let subs = g.all_subgroups();
        for (ki, k) in subs.iter().enumerate() {
            for (hi, h) in subs.iter().enumerate() {
                if h.is_subset(k) {
                    work.push((g.clone(), ki, k.clone(), hi, h.clone()));
                }
            }
        }
    }
    let logs: Vec<Log> = work
        .par_iter()
        .map(|(g, ki, k, hi, h)| {
            let mut log = Log::default();
            let case = format!("{}/K{ki}/H{hi}", g.name());
            let lift = |s: &ElementSet| LSubset::characteristic(g.clone(), two.clone(), s).expect("subgroup");
            let p = pair(lift(h), lift(k), opts);
            let abn = p.is_abnormal();
            let oracle = g.classical_is_abnormal(k, h).expect("nested");
            log.equal("abnormal_bridge", &case, oracle, abn);
            let contra = p.is_contranormal().expect("consistent");
            let oracle = g.classical_is_contranormal(k, h).expect("nested");
            log.equal("contranormal_bridge", &case, oracle, contra);
            match p.is_normal() {
                Ok(v) => log.equal("normal_bridge", &case, g.is_normal_in(k, h).expect("nested"), v),
                Err(e) => log.expect("normal_bridge", || case.clone(), false, || ("agreement".into(), e.to_string())),
            }
            log.check("normalizer_bridge", || case.clone(), p.normalizer() == lift(&g.classical_normalizer(k, h).expect("nested")));
            log.check("normal_closure_bridge", || case.clone(), p.normal_closure().ok() == Some(lift(&g.classical_normal_closure(k, h).expect("nested"))));
            log
        })
        .collect();
    let mut log = Log::default();
    for l in logs {
        log.merge(l);
    }
    log
}
