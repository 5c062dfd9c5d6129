//! Text file formats: structure-constant tables and fixed-subalgebra basis
//! files. Both are line-oriented with a `key: value` header, a blank line,
//! and tab-separated body lines using the exact scalar literal syntax, so
//! that export/reload round-trips bit-exactly.

use crate::scalar::Field;
use crate::wedge;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed header line `{0}`")]
    Header(String),
    #[error("missing header key `{0}`")]
    MissingKey(&'static str),
    #[error("header backend `{0}` does not match requested backend `{1}`")]
    Backend(String, String),
    #[error("malformed body line `{0}`")]
    Body(String),
    #[error("bad scalar literal: {0}")]
    Scalar(#[from] crate::scalar::ScalarError),
    #[error("basis vector {0} is not fixed by the automorphism")]
    NotFixed(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
    keys: &[&'static str],
) -> Result<Vec<String>, FileError> {
    let mut out = vec![None; keys.len()];
    for line in lines {
        let line = line.trim_end();
        if line.is_empty() {
            break;
        }
        let (k, v) = line
            .split_once(':')
            .ok_or_else(|| FileError::Header(line.to_string()))?;
        if let Some(pos) = keys.iter().position(|key| *key == k.trim()) {
            out[pos] = Some(v.trim().to_string());
        } else {
            return Err(FileError::Header(line.to_string()));
        }
    }
    out.into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or(FileError::MissingKey(k)))
        .collect()
}

/// Structure constants over a frozen basis: lines `i TAB j TAB k TAB c`
/// with i < j meaning [b_i, b_j] = sum_k c b_k; zero coefficients omitted,
/// antisymmetry implied.
#[derive(Clone, PartialEq, Debug)]
pub struct ScFile<F> {
    pub model: String,
    pub basis_version: String,
    pub dimension: usize,
    pub entries: Vec<(u32, u32, u32, F)>,
}

impl<F: Field> ScFile<F> {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "model: {}", self.model);
        let _ = writeln!(s, "basis-version: {}", self.basis_version);
        let _ = writeln!(s, "backend: {}", F::NAME);
        let _ = writeln!(s, "dimension: {}", self.dimension);
        s.push('\n');
        for (i, j, k, c) in &self.entries {
            let _ = writeln!(s, "{i}\t{j}\t{k}\t{}", c.literal());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let mut lines = text.lines();
        let header = parse_header(
            &mut lines,
            &["model", "basis-version", "backend", "dimension"],
        )?;
        if header[2] != F::NAME {
            return Err(FileError::Backend(header[2].clone(), F::NAME.to_string()));
        }
        let dimension: usize = header[3]
            .parse()
            .map_err(|_| FileError::Header(format!("dimension: {}", header[3])))?;
        let mut entries = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            if parts.len() != 4 {
                return Err(FileError::Body(line.to_string()));
            }
            let idx: Vec<u32> = parts[..3]
                .iter()
                .map(|p| p.parse().map_err(|_| FileError::Body(line.to_string())))
                .collect::<Result<_, _>>()?;
            if idx[0] >= idx[1] || idx.iter().any(|&x| x as usize >= dimension) {
                return Err(FileError::Body(line.to_string()));
            }
            entries.push((idx[0], idx[1], idx[2], F::parse_literal(parts[3])?));
        }
        Ok(ScFile {
            model: header[0].clone(),
            basis_version: header[1].clone(),
            dimension,
            entries,
        })
    }
}

/// Complete structure-constant table of the wedge model over the frozen
/// complex basis.
pub fn wedge_sc_file<F: Field>() -> ScFile<F> {
    let table = wedge::structure_table::<F>();
    let mut entries = Vec::new();
    for i in 0..wedge::DIM {
        for j in i + 1..wedge::DIM {
            for (k, c) in &table.entries[wedge::pair_index(i, j)] {
                entries.push((i as u32, j as u32, *k, c.clone()));
            }
        }
    }
    ScFile {
        model: "wedge".into(),
        basis_version: wedge::BASIS_VERSION.into(),
        dimension: wedge::DIM,
        entries,
    }
}

/// Complete structure-constant table of the Freudenthal model over the
/// frozen complex basis (a few minutes of exact arithmetic).
pub fn freudenthal_sc_file<F: Field>(
    model: &crate::freudenthal::Model<F>,
) -> ScFile<F> {
    use crate::freudenthal::{bracket_f, FDIM};
    let basis: Vec<_> = (0..FDIM).map(|i| model.basis_element(i)).collect();
    let mut entries = Vec::new();
    for i in 0..FDIM {
        for j in i + 1..FDIM {
            let c = model
                .coords(&bracket_f(&basis[i], &basis[j]))
                .expect("bracket leaves the e7 span");
            for (k, x) in c.into_iter().enumerate() {
                if !x.is_zero() {
                    entries.push((i as u32, j as u32, k as u32, x));
                }
            }
        }
    }
    ScFile {
        model: "freudenthal".into(),
        basis_version: crate::freudenthal::BASIS_VERSION.into(),
        dimension: FDIM,
        entries,
    }
}

/// Fixed-subalgebra basis file: one line per basis vector, 248 tab-separated
/// scalar literals (real coordinates over the frozen real basis).
#[derive(Clone, PartialEq, Debug)]
pub struct BasisFile<F> {
    pub model: String,
    pub basis_version: String,
    pub automorphism: String,
    pub ambient: usize,
    pub vectors: Vec<Vec<F>>,
}

impl<F: Field> BasisFile<F> {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "model: {}", self.model);
        let _ = writeln!(s, "basis-version: {}", self.basis_version);
        let _ = writeln!(s, "backend: {}", F::NAME);
        let _ = writeln!(s, "automorphism: {}", self.automorphism);
        let _ = writeln!(s, "ambient: {}", self.ambient);
        let _ = writeln!(s, "dimension: {}", self.vectors.len());
        s.push('\n');
        for v in &self.vectors {
            let line: Vec<String> = v.iter().map(F::literal).collect();
            let _ = writeln!(s, "{}", line.join("\t"));
        }
        s
    }

    /// Parses and re-verifies fixedness: `apply` must be the coordinate
    /// action of the automorphism on the real form.
    pub fn parse(text: &str, apply: impl Fn(&[F]) -> Vec<F>) -> Result<Self, FileError> {
        let mut lines = text.lines();
        let header = parse_header(
            &mut lines,
            &[
                "model",
                "basis-version",
                "backend",
                "automorphism",
                "ambient",
                "dimension",
            ],
        )?;
        if header[2] != F::NAME {
            return Err(FileError::Backend(header[2].clone(), F::NAME.to_string()));
        }
        let ambient: usize = header[4]
            .parse()
            .map_err(|_| FileError::Header(format!("ambient: {}", header[4])))?;
        let mut vectors = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let v: Vec<F> = line
                .split('\t')
                .map(F::parse_literal)
                .collect::<Result<_, _>>()?;
            if v.len() != ambient {
                return Err(FileError::Body(line.to_string()));
            }
            vectors.push(v);
        }
        let declared: usize = header[5]
            .parse()
            .map_err(|_| FileError::Header(format!("dimension: {}", header[5])))?;
        if declared != vectors.len() {
            return Err(FileError::Header(format!(
                "dimension: {} but {} vectors",
                declared,
                vectors.len()
            )));
        }
        for (n, v) in vectors.iter().enumerate() {
            if apply(v) != *v {
                return Err(FileError::NotFixed(n));
            }
        }
        Ok(BasisFile {
            model: header[0].clone(),
            basis_version: header[1].clone(),
            automorphism: header[3].clone(),
            ambient,
            vectors,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, Qi};

    #[test]
    fn sc_round_trip_is_exact() {
        let f = wedge_sc_file::<Qi>();
        let text = f.to_text();
        let g = ScFile::<Qi>::parse(&text).expect("parse");
        assert_eq!(f, g);
        assert_eq!(text, g.to_text());
    }

    #[test]
    fn sc_known_entry() {
        // [E11 - E99 (diagonal slot 72), (0, e_123, 0) (slot 80)] is
        // (0, e_123, 0): exactly one output line with coefficient 1.
        let f = wedge_sc_file::<Qi>();
        let hits: Vec<_> = f
            .entries
            .iter()
            .filter(|(i, j, _, _)| *i == 72 && *j == 80)
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].2, 80);
        assert_eq!(hits[0].3, Qi::one());
    }

    #[test]
    fn sc_rejects_backend_mismatch_and_bad_lines() {
        let f = wedge_sc_file::<Qi>();
        let text = f.to_text();
        assert!(ScFile::<crate::scalar::Z24>::parse(&text).is_err());
        assert!(ScFile::<Qi>::parse("model: wedge\n").is_err());
        let bad = "model: w\nbasis-version: v\nbackend: qi\ndimension: 248\n\n9\t3\t0\t1\n";
        assert!(ScFile::<Qi>::parse(bad).is_err(), "i >= j must be rejected");
    }

    #[test]
    fn basis_file_round_trip_reverifies() {
        let vectors = vec![vec![Qi::one(), Qi::zero()], vec![Qi::zero(), Qi::one()]];
        let f = BasisFile {
            model: "wedge".to_string(),
            basis_version: "test".to_string(),
            automorphism: "id".to_string(),
            ambient: 2,
            vectors,
        };
        let text = f.to_text();
        let g = BasisFile::<Qi>::parse(&text, |v| v.to_vec()).expect("parse");
        assert_eq!(f, g);
        // A loader with a non-identity action rejects unfixed vectors.
        let swapped = BasisFile::<Qi>::parse(&text, |v| vec![v[1].clone(), v[0].clone()]);
        assert!(matches!(swapped, Err(FileError::NotFixed(_))));
    }
}
