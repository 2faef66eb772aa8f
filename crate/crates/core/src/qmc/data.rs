//! Bundled data files: Sobol' direction numbers and a lattice generating
//! vector. Setting `GAILRS_DATA_DIR` makes the loaders read the files of the
//! same name from that directory instead.
//!
//! Both files start with a `#` header line ending in `sha256=<hex>`, the
//! digest of everything after the header line.

use std::borrow::Cow;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const DATA_DIR_ENV: &str = "GAILRS_DATA_DIR";
pub const SOBOL_FILE: &str = "sobol_joe_kuo_1111.txt";
pub const LATTICE_FILE: &str = "lattice_kuo_250.txt";

const SOBOL_BUNDLED: &str = include_str!("../../data/sobol_joe_kuo_1111.txt");
const LATTICE_BUNDLED: &str = include_str!("../../data/lattice_kuo_250.txt");

fn data_error(name: &str, message: impl Into<String>) -> Error {
    Error::Data {
        name: name.to_string(),
        message: message.into(),
    }
}

fn read(name: &str) -> Result<Cow<'static, str>> {
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let path = std::path::Path::new(&dir).join(name);
        return std::fs::read_to_string(&path)
            .map(Cow::Owned)
            .map_err(|e| data_error(name, format!("{}: {e}", path.display())));
    }
    Ok(Cow::Borrowed(match name {
        SOBOL_FILE => SOBOL_BUNDLED,
        _ => LATTICE_BUNDLED,
    }))
}

/// Checks the header digest and returns the body.
pub fn verify<'a>(name: &str, text: &'a str) -> Result<&'a str> {
    let (header, body) = text
        .split_once('\n')
        .ok_or_else(|| data_error(name, "missing header line"))?;
    if !header.starts_with('#') {
        return Err(data_error(name, "header line must start with '#'"));
    }
    let want = header
        .rsplit_once("sha256=")
        .map(|(_, h)| h.trim())
        .ok_or_else(|| data_error(name, "header has no sha256 field"))?;
    let got: String = Sha256::digest(body.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    if got != want {
        return Err(data_error(name, format!("checksum mismatch: header {want}, data {got}")));
    }
    Ok(body)
}

/// One line of the direction-number table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionEntry {
    pub dim: usize,
    pub degree: u32,
    pub coeffs: u64,
    pub m: Vec<u64>,
}

pub fn parse_direction_numbers(name: &str, body: &str) -> Result<Vec<DirectionEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in body.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || data_error(name, format!("malformed line {}", lineno + 2));
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if nums.len() < 3 {
            return Err(bad());
        }
        let degree = nums[1] as u32;
        let m = nums[3..].to_vec();
        if m.len() != degree as usize || degree == 0 {
            return Err(bad());
        }
        // m_k must be odd and below 2^k
        if m.iter().enumerate().any(|(k, &v)| v % 2 == 0 || v >= 1 << (k + 1)) {
            return Err(bad());
        }
        out.push(DirectionEntry {
            dim: nums[0] as usize,
            degree,
            coeffs: nums[2],
            m,
        });
    }
    for (i, e) in out.iter().enumerate() {
        if e.dim != i + 2 {
            return Err(data_error(name, format!("expected dimension {}, found {}", i + 2, e.dim)));
        }
    }
    Ok(out)
}

/// Direction numbers for dimensions 2 onwards, at least `min_dims - 1` rows.
pub fn load_direction_numbers(min_dims: usize) -> Result<Vec<DirectionEntry>> {
    let text = read(SOBOL_FILE)?;
    let rows = parse_direction_numbers(SOBOL_FILE, verify(SOBOL_FILE, &text)?)?;
    if rows.len() + 1 < min_dims {
        return Err(data_error(
            SOBOL_FILE,
            format!("covers {} dimensions, need {min_dims}", rows.len() + 1),
        ));
    }
    Ok(rows)
}

pub fn parse_generating_vector(name: &str, body: &str) -> Result<Vec<u64>> {
    body.split_whitespace()
        .map(|t| match t.parse::<u64>() {
            Ok(v) if v % 2 == 1 => Ok(v),
            _ => Err(data_error(name, format!("bad generating vector entry '{t}'"))),
        })
        .collect()
}

pub fn load_generating_vector(min_dims: usize) -> Result<Vec<u64>> {
    let text = read(LATTICE_FILE)?;
    let z = parse_generating_vector(LATTICE_FILE, verify(LATTICE_FILE, &text)?)?;
    if z.len() < min_dims {
        return Err(data_error(
            LATTICE_FILE,
            format!("covers {} dimensions, need {min_dims}", z.len()),
        ));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_verify() {
        let dn = parse_direction_numbers(SOBOL_FILE, verify(SOBOL_FILE, SOBOL_BUNDLED).unwrap())
            .unwrap();
        assert_eq!(dn.len() + 1, 1111);
        assert_eq!(dn[0], DirectionEntry { dim: 2, degree: 1, coeffs: 0, m: vec![1] });
        assert_eq!(dn[2].m, vec![1, 3, 1]);
        let z = parse_generating_vector(LATTICE_FILE, verify(LATTICE_FILE, LATTICE_BUNDLED).unwrap())
            .unwrap();
        assert_eq!(z.len(), 250);
        assert_eq!(&z[..3], &[1, 182667, 213731]);
    }

    #[test]
    fn tampering_is_detected() {
        let bad = LATTICE_BUNDLED.replacen("182667", "182669", 1);
        assert!(verify(LATTICE_FILE, &bad).is_err());
        assert!(verify(LATTICE_FILE, "1\n3\n").is_err());
    }
}
