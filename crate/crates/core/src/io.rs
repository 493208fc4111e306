//! Text formats for matrices of linear forms, graded modules, and point
//! sets. All three are UTF-8 with `#` comments and blank lines allowed
//! anywhere; parse errors carry 1-based line numbers.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::koszul::GradedModule;
use crate::linforms::LinearFormMatrix;
use crate::matrix::DenseMatrix;
use crate::multilinear::{format_element, parse_element, ElementKind};
use crate::points::PointSet;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_field_line(num: usize, line: &str) -> Result<FieldSpec> {
    let rest = line
        .strip_prefix("field")
        .ok_or_else(|| Error::parse(num, format!("expected field line, got {line:?}")))?
        .trim();
    let toks: Vec<&str> = rest.split_whitespace().collect();
    match toks.as_slice() {
        ["Q"] => Ok(FieldSpec::Rationals),
        ["Fp", p] => FieldSpec::parse(&format!("Fp:{p}")).map_err(|e| match e {
            Error::Invalid(msg) => Error::parse(num, msg),
            other => other,
        }),
        _ => Err(Error::parse(num, format!("unrecognized field {rest:?}"))),
    }
}

fn format_field_line(spec: &FieldSpec) -> String {
    match spec {
        FieldSpec::Prime(p) => format!("field Fp {p}"),
        FieldSpec::Rationals => "field Q".to_string(),
    }
}

/// Reads the field a file declares, without parsing the rest.
pub fn field_of(text: &str) -> Result<FieldSpec> {
    for (num, line) in content_lines(text) {
        if line.starts_with("field") {
            return Ok(parse_field_line(num, line)?);
        }
    }
    Err(Error::parse(0, "no field line found"))
}

fn check_field<K: Field>(ctx: &K::Ctx, declared: &FieldSpec) -> Result<()> {
    let have = K::spec(ctx);
    if *declared != have {
        return Err(Error::MixedField(
            format!("{declared}"),
            format!("{have}"),
        ));
    }
    Ok(())
}

fn kv(num: usize, tok: &str, key: &str) -> Result<String> {
    let (k, v) = tok
        .split_once('=')
        .ok_or_else(|| Error::parse(num, format!("expected {key}=..., got {tok:?}")))?;
    if k != key {
        return Err(Error::parse(num, format!("expected {key}=..., got {tok:?}")));
    }
    Ok(v.to_string())
}

fn kv_usize(num: usize, tok: &str, key: &str) -> Result<usize> {
    kv(num, tok, key)?
        .parse()
        .map_err(|_| Error::parse(num, format!("{key} is not a number in {tok:?}")))
}

// -------------------------------------------------------- linform-matrix

pub fn parse_linform_matrix<K: Field>(ctx: &K::Ctx, text: &str) -> Result<LinearFormMatrix<K>> {
    let mut lines = content_lines(text);
    let (num, line) = lines.next().ok_or_else(|| Error::parse(0, "empty file"))?;
    if line != "linform-matrix v1" {
        return Err(Error::parse(num, format!("expected linform-matrix v1, got {line:?}")));
    }
    let (num, line) = lines
        .next()
        .ok_or_else(|| Error::parse(num, "missing field line"))?;
    check_field::<K>(ctx, &parse_field_line(num, line)?)?;
    let (num, line) = lines
        .next()
        .ok_or_else(|| Error::parse(num, "missing dims line"))?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "dims" {
        return Err(Error::parse(num, format!("expected dims a=.. b=.. n=.., got {line:?}")));
    }
    let a = kv_usize(num, toks[1], "a")?;
    let b = kv_usize(num, toks[2], "b")?;
    let n = kv_usize(num, toks[3], "n")?;
    if a == 0 || b == 0 || n == 0 {
        return Err(Error::parse(num, "dims must be positive"));
    }
    let mut m = LinearFormMatrix::<K>::zero(a, b, n, ctx);
    for (num, line) in lines {
        let body = line
            .strip_prefix("entry")
            .ok_or_else(|| Error::parse(num, format!("expected entry line, got {line:?}")))?;
        let (head, form) = body
            .split_once(':')
            .ok_or_else(|| Error::parse(num, "entry line needs a ':'"))?;
        let toks: Vec<&str> = head.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(num, format!("expected entry j=.. i=.. : form, got {line:?}")));
        }
        let j = kv_usize(num, toks[0], "j")?;
        let i = kv_usize(num, toks[1], "i")?;
        if j == 0 || j > b || i == 0 || i > a {
            return Err(Error::parse(
                num,
                format!("entry index (j={j}, i={i}) outside b={b}, a={a}"),
            ));
        }
        let coords = parse_element::<K>(ctx, n, ElementKind::Linear, form).map_err(|e| match e {
            Error::Invalid(msg) => Error::parse(num, msg),
            other => other,
        })?;
        for (k, c) in coords.into_iter().enumerate() {
            m.set_coeff(j - 1, i - 1, k, c);
        }
    }
    Ok(m)
}

pub fn format_linform_matrix<K: Field>(m: &LinearFormMatrix<K>) -> String {
    let mut out = String::from("linform-matrix v1\n");
    let _ = writeln!(out, "{}", format_field_line(&K::spec(m.ctx())));
    let _ = writeln!(out, "dims a={} b={} n={}", m.a(), m.b(), m.n());
    for j in 0..m.b() {
        for i in 0..m.a() {
            let coords = m.entry(j, i);
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            let _ = writeln!(
                out,
                "entry j={} i={} : {}",
                j + 1,
                i + 1,
                format_element(m.n(), ElementKind::Linear, coords)
            );
        }
    }
    out
}

// --------------------------------------------------------- graded-module

pub fn parse_graded_module<K: Field>(ctx: &K::Ctx, text: &str) -> Result<GradedModule<K>> {
    let mut lines = content_lines(text);
    let (num, line) = lines.next().ok_or_else(|| Error::parse(0, "empty file"))?;
    if line != "graded-module v1" {
        return Err(Error::parse(num, format!("expected graded-module v1, got {line:?}")));
    }
    let (num, line) = lines
        .next()
        .ok_or_else(|| Error::parse(num, "missing field line"))?;
    check_field::<K>(ctx, &parse_field_line(num, line)?)?;
    let (num, line) = lines
        .next()
        .ok_or_else(|| Error::parse(num, "missing shape line"))?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 4 || toks[1] != "degrees" || toks[3] != "dims" {
        return Err(Error::parse(
            num,
            format!("expected n=.. degrees a..b dims d0 d1 ..., got {line:?}"),
        ));
    }
    let n = kv_usize(num, toks[0], "n")?;
    if n == 0 {
        return Err(Error::parse(num, "n must be positive"));
    }
    let (lo, hi) = toks[2]
        .split_once("..")
        .ok_or_else(|| Error::parse(num, format!("expected degree range a..b, got {:?}", toks[2])))?;
    let q_min: i64 = lo
        .parse()
        .map_err(|_| Error::parse(num, format!("bad degree {lo:?}")))?;
    let q_max: i64 = hi
        .parse()
        .map_err(|_| Error::parse(num, format!("bad degree {hi:?}")))?;
    if q_max < q_min {
        return Err(Error::parse(num, "degree range is empty"));
    }
    let dims: Vec<usize> = toks[4..]
        .iter()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(num, format!("bad dimension {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if dims.len() as i64 != q_max - q_min + 1 {
        return Err(Error::parse(
            num,
            format!(
                "{} degrees but {} dimensions",
                q_max - q_min + 1,
                dims.len()
            ),
        ));
    }
    let mut mult: Vec<Vec<DenseMatrix<K>>> = (0..dims.len().saturating_sub(1))
        .map(|t| {
            (0..n)
                .map(|_| DenseMatrix::zeros(dims[t + 1], dims[t], ctx))
                .collect()
        })
        .collect();
    for (num, line) in lines {
        let body = line
            .strip_prefix("mult")
            .ok_or_else(|| Error::parse(num, format!("expected mult line, got {line:?}")))?;
        let (head, entries) = body
            .split_once(':')
            .ok_or_else(|| Error::parse(num, "mult line needs a ':'"))?;
        let toks: Vec<&str> = head.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::parse(num, format!("expected mult q=.. k=.. : rows, got {line:?}")));
        }
        let q: i64 = kv(num, toks[0], "q")?
            .parse()
            .map_err(|_| Error::parse(num, "bad degree in mult line"))?;
        let k = kv_usize(num, toks[1], "k")?;
        if q < q_min || q >= q_max {
            return Err(Error::parse(
                num,
                format!("mult degree {q} outside {q_min}..{}", q_max - 1),
            ));
        }
        if k == 0 || k > n {
            return Err(Error::parse(num, format!("variable index k={k} outside 1..{n}")));
        }
        let t = (q - q_min) as usize;
        let (rows, cols) = (dims[t + 1], dims[t]);
        let row_toks: Vec<&str> = if entries.trim().is_empty() {
            Vec::new()
        } else {
            entries.split(';').collect()
        };
        if row_toks.len() != rows {
            return Err(Error::parse(
                num,
                format!("expected {rows} rows separated by ';', got {}", row_toks.len()),
            ));
        }
        let mut mat = DenseMatrix::zeros(rows, cols, ctx);
        for (r, row) in row_toks.iter().enumerate() {
            let cells: Vec<&str> = row.split_whitespace().collect();
            if cells.len() != cols {
                return Err(Error::parse(
                    num,
                    format!("row {} has {} entries, expected {cols}", r + 1, cells.len()),
                ));
            }
            for (c, cell) in cells.iter().enumerate() {
                let v = K::parse_scalar(ctx, cell).map_err(|e| match e {
                    Error::Invalid(msg) => Error::parse(num, msg),
                    other => other,
                })?;
                mat.set(r, c, v);
            }
        }
        mult[t][k - 1] = mat;
    }
    GradedModule::new(ctx, n, q_min, dims, mult)
}

pub fn format_graded_module<K: Field>(m: &GradedModule<K>) -> String {
    let mut out = String::from("graded-module v1\n");
    let _ = writeln!(out, "{}", format_field_line(&K::spec(m.ctx())));
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(
        out,
        "n={} degrees {}..{} dims {}",
        m.n(),
        m.q_min(),
        m.q_max(),
        dims.join(" ")
    );
    for q in m.q_min()..m.q_max() {
        for k in 0..m.n() {
            let Some(a) = m.action(q, k) else { continue };
            if a.rows() == 0 || a.is_zero() {
                continue;
            }
            let rows: Vec<String> = (0..a.rows())
                .map(|r| {
                    (0..a.cols())
                        .map(|c| format!("{}", a.at(r, c)))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            let _ = writeln!(out, "mult q={q} k={} : {}", k + 1, rows.join(" ; "));
        }
    }
    out
}

// -------------------------------------------------------------- pointset

pub fn parse_pointset<K: Field>(ctx: &K::Ctx, text: &str) -> Result<PointSet<K>> {
    let mut lines = content_lines(text);
    let (num, line) = lines.next().ok_or_else(|| Error::parse(0, "empty file"))?;
    if line != "pointset v1" {
        return Err(Error::parse(num, format!("expected pointset v1, got {line:?}")));
    }
    let (num, line) = lines
        .next()
        .ok_or_else(|| Error::parse(num, "missing field line"))?;
    check_field::<K>(ctx, &parse_field_line(num, line)?)?;
    let (num, line) = lines
        .next()
        .ok_or_else(|| Error::parse(num, "missing ambient line"))?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "ambient" {
        return Err(Error::parse(num, format!("expected ambient r=.., got {line:?}")));
    }
    let r = kv_usize(num, toks[1], "r")?;
    let mut reps = Vec::new();
    for (num, line) in lines {
        let body = line
            .strip_prefix("point")
            .ok_or_else(|| Error::parse(num, format!("expected point line, got {line:?}")))?;
        let cells: Vec<&str> = body.split_whitespace().collect();
        if cells.len() != r + 1 {
            return Err(Error::parse(
                num,
                format!("point has {} coordinates, expected {}", cells.len(), r + 1),
            ));
        }
        let coords = cells
            .iter()
            .map(|c| {
                K::parse_scalar(ctx, c).map_err(|e| match e {
                    Error::Invalid(msg) => Error::parse(num, msg),
                    other => other,
                })
            })
            .collect::<Result<Vec<K>>>()?;
        reps.push(coords);
    }
    PointSet::new(ctx, r, reps)
}

pub fn format_pointset<K: Field>(z: &PointSet<K>) -> String {
    let mut out = String::from("pointset v1\n");
    let _ = writeln!(out, "{}", format_field_line(&K::spec(z.ctx())));
    let _ = writeln!(out, "ambient r={}", z.r());
    for p in z.points() {
        let cells: Vec<String> = p.iter().map(|c| format!("{c}")).collect();
        let _ = writeln!(out, "point {}", cells.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use crate::koszul::monomial_quotient;
    use crate::rng::stream;

    #[test]
    fn linform_matrix_round_trip() {
        let mut rng = stream(7, 0);
        let m = LinearFormMatrix::<Fp>::random(2, 3, 4, &10007, &mut rng);
        let text = format_linform_matrix(&m);
        let back = parse_linform_matrix::<Fp>(&10007, &text).unwrap();
        assert_eq!(format_linform_matrix(&back), text);
        assert_eq!(field_of(&text).unwrap(), FieldSpec::Prime(10007));
    }

    #[test]
    fn linform_matrix_example() {
        let text = "# comment\nlinform-matrix v1\nfield Fp 10007\ndims a=2 b=1 n=2\nentry j=1 i=1 : x1\nentry j=1 i=2 : x2\n";
        let m = parse_linform_matrix::<Fp>(&10007, text).unwrap();
        assert_eq!(m.entry(0, 0)[0], Fp::new(1, 10007));
        assert_eq!(m.entry(0, 1)[1], Fp::new(1, 10007));
    }

    #[test]
    fn graded_module_round_trip() {
        let m = monomial_quotient::<Rat>(&(), 3, 2, &[vec![2, 0, 0]]).unwrap();
        let text = format_graded_module(&m);
        let back = parse_graded_module::<Rat>(&(), &text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn pointset_round_trip_and_duplicate_rejection() {
        let text = "pointset v1\nfield Q\nambient r=2\npoint 1 0 0\npoint 0 1 1/2\n";
        let z = parse_pointset::<Rat>(&(), text).unwrap();
        // representatives are normalized on construction, so the stable
        // form is reached after one round
        let stable = format_pointset(&z);
        let again = parse_pointset::<Rat>(&(), &stable).unwrap();
        assert_eq!(format_pointset(&again), stable);
        assert_eq!(z.points().len(), 2);
        let dup = "pointset v1\nfield Q\nambient r=2\npoint 1 0 0\npoint 2 0 0\n";
        assert!(parse_pointset::<Rat>(&(), dup).is_err());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "linform-matrix v1\nfield Fp 10007\ndims a=2 b=1 n=2\nentry j=9 i=1 : x1\n";
        let err = parse_linform_matrix::<Fp>(&10007, text).unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
        let text = "pointset v1\nfield Q\nambient r=2\npoint 1 0\n";
        let err = parse_pointset::<Rat>(&(), text).unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let text = "pointset v1\nfield Q\nambient r=1\npoint 1 0\n";
        assert!(parse_pointset::<Fp>(&10007, text).is_err());
    }
}
