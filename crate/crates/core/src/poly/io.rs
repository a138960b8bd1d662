//! Triple files: a header `triple D` followed by lines `f I A B C V`
//! meaning `f_I(A, B, C) = V`. Every entry must be listed exactly once.

use super::Triple;
use crate::error::{invalid, ParseError, Result};
use crate::text::lines;

pub fn parse_triple(text: &str) -> Result<Triple> {
    let mut it = lines(text);
    let header = it
        .next()
        .ok_or_else(|| ParseError::Structure("empty triple file".into()))?;
    if header.keyword() != "triple" {
        return Err(header.err("expected `triple D`").into());
    }
    header.expect_len(2)?;
    let d: usize = header.get(1)?;
    if d == 0 || d > super::MAX_DOMAIN {
        return Err(header.err(format!("domain size {d} out of range 1..={}", super::MAX_DOMAIN)).into());
    }
    let mut table = vec![0usize; 3 * d * d * d];
    for line in it {
        if line.keyword() != "f" {
            return Err(line.err(format!("unknown keyword `{}`", line.keyword())).into());
        }
        line.expect_len(6)?;
        let mut vals = [0usize; 5];
        for (k, v) in vals.iter_mut().enumerate() {
            *v = line.get(k + 1)?;
        }
        let [i, a, b, c, v] = vals;
        if !(1..=3).contains(&i) {
            return Err(line.err(format!("operation index {i} not in 1..=3")).into());
        }
        if [a, b, c, v].iter().any(|&x| x == 0 || x > d) {
            return Err(line.err(format!("value out of range 1..={d}")).into());
        }
        let slot = &mut table[(((i - 1) * d + a - 1) * d + b - 1) * d + c - 1];
        if *slot != 0 {
            return Err(line.err(format!("f{i}({a}, {b}, {c}) given twice")).into());
        }
        *slot = v;
    }
    if let Some(pos) = table.iter().position(|&v| v == 0) {
        let (i, rest) = (pos / (d * d * d), pos % (d * d * d));
        return Err(invalid(format!(
            "f{}({}, {}, {}) missing",
            i + 1,
            rest / (d * d) + 1,
            rest / d % d + 1,
            rest % d + 1
        )));
    }
    let at = |i: usize, a: usize, b: usize, c: usize| table[(((i * d + a - 1) * d) + b - 1) * d + c - 1];
    Triple::from_fn(d, |a, b, c| [at(0, a, b, c), at(1, a, b, c), at(2, a, b, c)])
}

pub fn write_triple(f: &Triple) -> String {
    let d = f.domain_size();
    let mut out = format!("triple {d}\n");
    for i in 1..=3 {
        for a in 1..=d {
            for b in 1..=d {
                for c in 1..=d {
                    out.push_str(&format!("f {i} {a} {b} {c} {}\n", f.op(i).get(a, b, c)));
                }
            }
        }
    }
    out
}
