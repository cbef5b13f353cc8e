//! Plain-text transverse models.
//!
//! ```text
//! transverse-model v1
//! n 1
//! dim 0 0 1
//! dim 1 1 1
//! lefschetz 0 0
//! 1
//! end
//! ```
//!
//! `lefschetz p q` is followed by one line per row of `L: H^{p,q} → H^{p+1,q+1}`,
//! entries written as integers or `num/den`. Blank lines and `#` comments are
//! ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::BigRational;

use super::{QMatrix, TransverseModel};
use crate::error::{Error, Result};

pub const HEADER: &str = "transverse-model v1";

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::ModelParse { line, msg: msg.into() }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| perr(line, format!("bad {what} `{tok}`")))
}

pub fn parse_model(text: &str) -> Result<TransverseModel> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((i, other)) => return Err(perr(i, format!("expected `{HEADER}`, found `{other}`"))),
        None => return Err(perr(0, "empty model file")),
    }

    let mut n = None;
    let mut dims = BTreeMap::new();
    // (p, q) -> (line of the header, rows)
    let mut rows_of = BTreeMap::<(usize, usize), (usize, Vec<Vec<BigRational>>)>::new();

    while let Some((i, line)) = lines.next() {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("n") => {
                if n.is_some() {
                    return Err(perr(i, "duplicate `n`"));
                }
                n = Some(parse_usize(toks.next(), i, "n")?);
            }
            Some("dim") => {
                let p = parse_usize(toks.next(), i, "p")?;
                let q = parse_usize(toks.next(), i, "q")?;
                let d = parse_usize(toks.next(), i, "dimension")?;
                if dims.insert((p, q), d).is_some() {
                    return Err(perr(i, format!("duplicate dim {p} {q}")));
                }
            }
            Some("lefschetz") => {
                let p = parse_usize(toks.next(), i, "p")?;
                let q = parse_usize(toks.next(), i, "q")?;
                let mut rows = Vec::new();
                loop {
                    let Some((j, row)) = lines.next() else {
                        return Err(perr(i, "unterminated lefschetz block"));
                    };
                    if row == "end" {
                        break;
                    }
                    let entries = row
                        .split_whitespace()
                        .map(|t| t.parse::<BigRational>().map_err(|_| perr(j, format!("bad rational `{t}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(entries);
                }
                if rows_of.insert((p, q), (i, rows)).is_some() {
                    return Err(perr(i, format!("duplicate lefschetz {p} {q}")));
                }
            }
            Some(other) => return Err(perr(i, format!("unknown directive `{other}`"))),
            None => unreachable!("blank lines are filtered"),
        }
        if toks.next().is_some() {
            return Err(perr(i, "trailing tokens"));
        }
    }

    let n = n.ok_or_else(|| perr(0, "missing `n`"))?;
    let dim = |p: usize, q: usize| dims.get(&(p, q)).copied().unwrap_or(0);
    let mut lefschetz = BTreeMap::new();
    for ((p, q), (i, rows)) in rows_of {
        let (r, c) = (dim(p + 1, q + 1), dim(p, q));
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(perr(i, format!("lefschetz {p} {q} must be {r}x{c}")));
        }
        lefschetz.insert((p, q), QMatrix::from_rows(rows, c));
    }
    TransverseModel::new(n, dims, lefschetz)
}

pub fn write_model(model: &TransverseModel) -> String {
    let mut out = format!("{HEADER}\nn {}\n", model.n_transverse());
    for (&(p, q), d) in model.dims() {
        writeln!(out, "dim {p} {q} {d}").unwrap();
    }
    for (&(p, q), m) in model.lefschetz_maps() {
        if m.rows() == 0 || m.cols() == 0 {
            continue;
        }
        writeln!(out, "lefschetz {p} {q}").unwrap();
        out.push_str(&m.to_string());
        out.push_str("end\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cpn_model, sphere_product_model, tensor_model};
    use proptest::prelude::*;

    #[test]
    fn parses_the_documented_example() {
        let text = "transverse-model v1\n# CP^1\nn 1\ndim 0 0 1\ndim 1 1 1\nlefschetz 0 0\n1\nend\n";
        assert_eq!(parse_model(text).unwrap(), cpn_model(1));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("nope\n", 1),
            ("transverse-model v1\nn x\n", 2),
            ("transverse-model v1\nn 1\ndim 0 0 1\ndim 1 1 1\nlefschetz 0 0\n1 2\nend\n", 5),
            ("transverse-model v1\nn 1\nlefschetz 0 0\n", 3),
            ("transverse-model v1\nn 1\nfoo\n", 3),
            ("transverse-model v1\nn 1\ndim 0 0 1\nlefschetz 0 0\n1/0\nend\n", 5),
        ];
        for (text, line) in cases {
            match parse_model(text) {
                Err(Error::ModelParse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        let singular = "transverse-model v1\nn 1\ndim 0 0 1\ndim 1 1 1\nlefschetz 0 0\n0\nend\n";
        assert!(matches!(parse_model(singular), Err(Error::ModelMismatch(_))));
    }

    #[test]
    fn round_trips_products() {
        let m = sphere_product_model(2, 1);
        assert_eq!(parse_model(&write_model(&m)).unwrap(), m);
    }

    proptest! {
        #[test]
        fn round_trip(ns in prop::collection::vec(0usize..3, 1..4), num in -5i64..6, den in 1i64..5) {
            prop_assume!(num != 0);
            let mut m = cpn_model(ns[0]);
            for &k in &ns[1..] {
                m = tensor_model(&m, &cpn_model(k)).unwrap();
            }
            let s = BigRational::new(num.into(), den.into());
            let scaled: BTreeMap<_, _> = m.lefschetz_maps().iter().map(|(&k, l)| (k, l.scale(&s))).collect();
            let m = TransverseModel::new(m.n_transverse(), m.dims().clone(), scaled).unwrap();
            let text = write_model(&m);
            prop_assert_eq!(parse_model(&text).unwrap(), m);
        }
    }
}
