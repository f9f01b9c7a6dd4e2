//! Text and structured renderings of classification, verification and
//! enumeration results.
//!
//! The structured form is one `key = value` line per fact with dotted keys.
//! It never contains timings, so repeated runs are byte-identical.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::lsub::LSubset;
use crate::theory::{ClassificationReport, Maximality};
use crate::verify::SuiteResult;

/// Failure samples printed per suite.
pub const FAILURES_SHOWN: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "structured" => Ok(Format::Structured),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

fn values(s: &LSubset) -> String {
    let (g, l) = (s.group(), s.lattice());
    g.ids()
        .map(|x| format!("{} {}", g.perm(x), l.name_of(s.value(x))))
        .collect::<Vec<_>>()
        .join(", ")
}

fn defect(d: Option<usize>) -> String {
    d.map_or_else(|| "none".to_string(), |d| d.to_string())
}

fn classes(r: &ClassificationReport) -> Vec<&'static str> {
    let mut c = Vec::new();
    if r.normal {
        c.push("normal");
    }
    if r.abnormal {
        c.push("abnormal");
    }
    if r.contranormal {
        c.push("contranormal");
    }
    if r.maximal.is_true() {
        c.push("maximal");
    }
    c
}

fn classification_fields(out: &mut String, prefix: &str, r: &ClassificationReport) {
    let l = r.eta.lattice();
    let g = r.eta.group();
    let mut kv = |k: &str, v: String| writeln!(out, "{prefix}{k} = {v}").unwrap();
    kv("subject", r.subject.clone());
    kv("parent", r.parent.clone());
    kv("group", r.group.clone());
    kv("lattice", r.lattice.clone());
    kv("lattice.distributive", r.distributive.to_string());
    kv("is_lsubgroup", r.is_lsubgroup.to_string());
    kv("tip", l.name_of(r.tip).to_string());
    kv("tail", l.name_of(r.tail).to_string());
    kv("proper", r.proper.to_string());
    kv("normal", r.normal.to_string());
    kv("abnormal", r.abnormal.to_string());
    kv("contranormal", r.contranormal.to_string());
    kv("self_normalizing", r.self_normalizing.to_string());
    kv("subnormal_defect", defect(r.subnormal_defect));
    kv("maximal", r.maximal.label().to_string());
    if let Maximality::NotMaximal(Some(w)) = &r.maximal {
        for x in g.ids() {
            kv(&format!("maximal.witness.{}", g.perm(x)), l.name_of(w.value(x)).to_string());
        }
    }
    for x in g.ids() {
        kv(&format!("normalizer.{}", g.perm(x)), l.name_of(r.normalizer.value(x)).to_string());
    }
    for x in g.ids() {
        kv(&format!("normal_closure.{}", g.perm(x)), l.name_of(r.normal_closure.value(x)).to_string());
    }
}

pub fn classification(r: &ClassificationReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Structured => classification_fields(&mut out, "", r),
        Format::Text => {
            let l = r.eta.lattice();
            let dist = if r.distributive { "" } else { " (not distributive)" };
            writeln!(out, "{} in {} over group {}, lattice {}{dist}", r.subject, r.parent, r.group, r.lattice).unwrap();
            writeln!(out, "  L-subgroup:       {}", r.is_lsubgroup).unwrap();
            writeln!(out, "  tip / tail:       {} / {}", l.name_of(r.tip), l.name_of(r.tail)).unwrap();
            writeln!(out, "  proper:           {}", r.proper).unwrap();
            writeln!(out, "  normal:           {}", r.normal).unwrap();
            writeln!(out, "  abnormal:         {}", r.abnormal).unwrap();
            writeln!(out, "  contranormal:     {}", r.contranormal).unwrap();
            writeln!(out, "  self-normalizing: {}", r.self_normalizing).unwrap();
            writeln!(out, "  subnormal defect: {}", defect(r.subnormal_defect)).unwrap();
            writeln!(out, "  maximal:          {}", r.maximal.label()).unwrap();
            if let Maximality::NotMaximal(Some(w)) = &r.maximal {
                writeln!(out, "    in between:     {}", values(w)).unwrap();
            }
            writeln!(out, "  normalizer:       {}", values(&r.normalizer)).unwrap();
            writeln!(out, "  normal closure:   {}", values(&r.normal_closure)).unwrap();
        }
    }
    out
}

pub fn verification(results: &[SuiteResult], format: Format) -> String {
    let mut out = String::new();
    for r in results {
        let s = r.suite.name();
        let shown = r.failures.iter().take(FAILURES_SHOWN);
        match format {
            Format::Structured => {
                let mut kv = |k: &str, v: String| writeln!(out, "suite.{s}.{k} = {v}").unwrap();
                kv("status", if r.ok() { "pass" } else { "fail" }.into());
                kv("run", r.run.to_string());
                kv("passed", r.passed.to_string());
                kv("failed", r.failed().to_string());
                kv("skipped", r.skipped.to_string());
                for (p, t) in &r.properties {
                    kv(&format!("property.{p}.checked"), t.checked.to_string());
                    kv(&format!("property.{p}.failed"), t.failed.to_string());
                    kv(&format!("property.{p}.skipped"), t.skipped.to_string());
                }
                for (n, t) in &r.instances {
                    kv(&format!("instance.{n}.checked"), t.checked.to_string());
                    kv(&format!("instance.{n}.failed"), t.failed.to_string());
                }
                for (i, f) in shown.enumerate() {
                    kv(&format!("failure.{i}.property"), f.property.clone());
                    kv(&format!("failure.{i}.case"), f.case.clone());
                    kv(&format!("failure.{i}.expected"), f.expected.clone());
                    kv(&format!("failure.{i}.actual"), f.actual.clone());
                }
            }
            Format::Text => {
                writeln!(
                    out,
                    "{}: {}  run {}, passed {}, failed {}, skipped {}  ({:.2} s)",
                    s,
                    if r.ok() { "PASS" } else { "FAIL" },
                    r.run,
                    r.passed,
                    r.failed(),
                    r.skipped,
                    r.wall.as_secs_f64()
                )
                .unwrap();
                for (p, t) in &r.properties {
                    let mark = if t.failed > 0 { "!" } else { " " };
                    writeln!(out, "  {mark} {p:<34} checked {:>9}  failed {:>7}  skipped {}", t.checked, t.failed, t.skipped).unwrap();
                }
                for (n, t) in &r.instances {
                    let mark = if t.failed > 0 { "!" } else { " " };
                    writeln!(out, "  {mark} instance {n:<25} checked {:>9}  failed {:>7}", t.checked, t.failed).unwrap();
                }
                for f in shown {
                    writeln!(out, "  FAIL {} [{}]: expected {}, got {}", f.case, f.property, f.expected, f.actual).unwrap();
                }
                let hidden = r.failed().saturating_sub(FAILURES_SHOWN.min(r.failures.len()));
                if hidden > 0 {
                    writeln!(out, "  ... {hidden} more failures not shown").unwrap();
                }
            }
        }
    }
    out
}

/// Counts per class over an enumeration. `none` counts L-subgroups in no class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Census {
    pub total: usize,
    pub normal: usize,
    pub abnormal: usize,
    pub contranormal: usize,
    pub maximal: usize,
    pub none: usize,
}

impl Census {
    pub fn of(reports: &[ClassificationReport]) -> Self {
        let mut c = Census::default();
        for r in reports {
            c.total += 1;
            c.normal += r.normal as usize;
            c.abnormal += r.abnormal as usize;
            c.contranormal += r.contranormal as usize;
            c.maximal += r.maximal.is_true() as usize;
            c.none += classes(r).is_empty() as usize;
        }
        c
    }
}

pub fn enumeration(parent: &str, reports: &[ClassificationReport], format: Format) -> String {
    let mut out = String::new();
    let c = Census::of(reports);
    match format {
        Format::Structured => {
            writeln!(out, "parent = {parent}").unwrap();
            writeln!(out, "count = {}", reports.len()).unwrap();
            for (i, r) in reports.iter().enumerate() {
                writeln!(out, "lsubgroup.{i}.values = {}", values(&r.eta)).unwrap();
                classification_fields(&mut out, &format!("lsubgroup.{i}."), r);
            }
            for (k, v) in [
                ("total", c.total),
                ("normal", c.normal),
                ("abnormal", c.abnormal),
                ("contranormal", c.contranormal),
                ("maximal", c.maximal),
                ("none", c.none),
            ] {
                writeln!(out, "census.{k} = {v}").unwrap();
            }
        }
        Format::Text => {
            writeln!(out, "{} L-subgroups of {parent}", reports.len()).unwrap();
            for (i, r) in reports.iter().enumerate() {
                let cls = classes(r);
                let cls = if cls.is_empty() { "none".to_string() } else { cls.join(" ") };
                writeln!(out, "  #{i:<4} [{cls}] {}", values(&r.eta)).unwrap();
            }
            writeln!(
                out,
                "census: total {} normal {} abnormal {} contranormal {} maximal {} none {}",
                c.total, c.normal, c.abnormal, c.contranormal, c.maximal, c.none
            )
            .unwrap();
        }
    }
    out
}
