//! Text formats for VCSP instances, arc-pair costs and crisp languages.
//! Values are `p`, `p/q` or `inf`; variables and domain values are 1-based.
//!
//! ```text
//! vcsp D N                 domain size and variable count
//! term r v1 ... vr         starts a term; unlisted tuples cost inf
//! t d1 ... dr VALUE        one table row of the current term
//!
//! cost gu gv hu hv VALUE   eta((gu, gv), (hu, hv)); unlisted pairs take a default
//!
//! language D               domain size
//! relation NAME            starts a relation
//! p a b                    one pair of the current relation
//! ```

use std::fmt::Write;

use super::{CostFunction, CrispLanguage, ValHomInstance, VcspInstance};
use crate::error::{invalid, ParseError, Result};
use crate::graph::DiGraph;
use crate::rational::ExtRational;
use crate::text::{at, lines};

fn structure(msg: impl Into<String>) -> crate::error::Error {
    ParseError::Structure(msg.into()).into()
}

pub fn parse_vcsp(text: &str) -> Result<VcspInstance> {
    let mut it = lines(text);
    let head = it.next().ok_or_else(|| structure("empty VCSP file"))?;
    if head.keyword() != "vcsp" {
        return Err(head.err("expected `vcsp D N`").into());
    }
    head.expect_len(3)?;
    let (d, n): (usize, usize) = (head.get(1)?, head.get(2)?);
    let mut inst = VcspInstance::new(d, n);
    let mut current: Option<(Vec<usize>, Vec<ExtRational>)> = None;
    let flush = |inst: &mut VcspInstance, cur: Option<(Vec<usize>, Vec<ExtRational>)>| -> Result<()> {
        if let Some((scope, table)) = cur {
            let arity = scope.len();
            inst.add_term(scope, CostFunction::new(d, arity, table)?)?;
        }
        Ok(())
    };
    for line in it {
        match line.keyword() {
            "term" => {
                flush(&mut inst, current.take()).map_err(|e| at(&line, e))?;
                let r: usize = line.get(1)?;
                line.expect_len(r + 2)?;
                let vars: Vec<usize> = line.rest(2)?;
                if let Some(&v) = vars.iter().find(|&&v| v == 0 || v > n) {
                    return Err(line.err(format!("variable {v} out of range 1..={n}")).into());
                }
                let size = super::table_size(d, r).map_err(|e| at(&line, e))?;
                current = Some((
                    vars.into_iter().map(|v| v - 1).collect(),
                    vec![ExtRational::Infinite; size],
                ));
            }
            "t" => {
                let Some((scope, table)) = current.as_mut() else {
                    return Err(line.err("table row before any `term`").into());
                };
                let r = scope.len();
                line.expect_len(r + 2)?;
                let mut index = 0;
                for i in 0..r {
                    let a: usize = line.get(i + 1)?;
                    if a == 0 || a > d {
                        return Err(line.err(format!("value {a} out of range 1..={d}")).into());
                    }
                    index = index * d + a - 1;
                }
                table[index] = line.get(r + 1)?;
            }
            other => return Err(line.err(format!("unexpected `{other}` in VCSP file")).into()),
        }
    }
    flush(&mut inst, current)?;
    Ok(inst)
}

/// Lists finite entries only.
pub fn write_vcsp(inst: &VcspInstance) -> String {
    let d = inst.domain_size();
    let mut s = format!("vcsp {d} {}\n", inst.num_vars());
    for term in inst.terms() {
        write!(s, "term {}", term.scope.len()).unwrap();
        for x in &term.scope {
            write!(s, " {}", x + 1).unwrap();
        }
        s.push('\n');
        let mut t = vec![0; term.scope.len()];
        for value in term.function.table() {
            if value.is_finite() {
                s.push('t');
                for a in &t {
                    write!(s, " {}", a + 1).unwrap();
                }
                writeln!(s, " {value}").unwrap();
            }
            super::increment(&mut t, d);
        }
    }
    s
}

/// Arc-pair costs for `G` and `H`; pairs not listed cost `default`.
pub fn parse_cost(text: &str, g: DiGraph, h: DiGraph, default: ExtRational) -> Result<ValHomInstance> {
    let mut inst = ValHomInstance::new(g, h, |_, _| default.clone());
    let mut seen = std::collections::BTreeSet::new();
    for line in lines(text) {
        if line.keyword() != "cost" {
            return Err(line.err(format!("unexpected `{}` in cost file", line.keyword())).into());
        }
        line.expect_len(6)?;
        let ga = (line.get(1)?, line.get(2)?);
        let ha = (line.get(3)?, line.get(4)?);
        if !seen.insert((ga, ha)) {
            return Err(line.err("arc pair listed twice").into());
        }
        inst.set_eta(ga, ha, line.get(5)?).map_err(|e| at(&line, e))?;
    }
    Ok(inst)
}

/// Lists every arc pair, so the default is irrelevant when re-reading.
pub fn write_cost(inst: &ValHomInstance) -> String {
    let mut s = String::new();
    for &ga in inst.g_arcs() {
        for &ha in inst.h_arcs() {
            let v = inst.eta(ga, ha).expect("listed arcs");
            writeln!(s, "cost {} {} {} {} {v}", ga.0, ga.1, ha.0, ha.1).unwrap();
        }
    }
    s
}

pub fn parse_language(text: &str) -> Result<CrispLanguage> {
    let mut it = lines(text);
    let head = it.next().ok_or_else(|| structure("empty language file"))?;
    if head.keyword() != "language" {
        return Err(head.err("expected `language D`").into());
    }
    head.expect_len(2)?;
    let mut lang = CrispLanguage::new(head.get(1)?);
    let mut current: Option<(String, Vec<(usize, usize)>)> = None;
    for line in it {
        match line.keyword() {
            "relation" => {
                line.expect_len(2)?;
                if let Some((name, pairs)) = current.take() {
                    lang.add_relation(name, pairs).map_err(|e| at(&line, e))?;
                }
                current = Some((line.fields[1].to_string(), Vec::new()));
            }
            "p" => {
                line.expect_len(3)?;
                let Some((_, pairs)) = current.as_mut() else {
                    return Err(line.err("pair before any `relation`").into());
                };
                pairs.push((line.get(1)?, line.get(2)?));
            }
            other => return Err(line.err(format!("unexpected `{other}` in language file")).into()),
        }
    }
    if let Some((name, pairs)) = current {
        lang.add_relation(name, pairs)?;
    }
    Ok(lang)
}

pub fn write_language(lang: &CrispLanguage) -> String {
    let mut s = format!("language {}\n", lang.domain_size());
    for r in lang.relations() {
        writeln!(s, "relation {}", r.name).unwrap();
        for (a, b) in &r.pairs {
            writeln!(s, "p {a} {b}").unwrap();
        }
    }
    s
}

/// Parses `0` or `inf` as a default cost.
pub fn parse_default_cost(s: &str) -> Result<ExtRational> {
    match s {
        "0" => Ok(ExtRational::zero()),
        "inf" => Ok(ExtRational::Infinite),
        other => Err(invalid(format!("default cost must be 0 or inf, not `{other}`"))),
    }
}
