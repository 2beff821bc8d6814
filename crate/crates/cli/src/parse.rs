//! Flag value syntax: complex `re,im`, rationals `num/den` or decimals,
//! coefficient lists separated by `;`.

use num_complex::Complex64;
use wharm_core::angles::{Angle, FunctionOfAngles};
use wharm_core::AlphaParam;

pub fn alpha(s: &str) -> Result<AlphaParam, String> {
    s.parse().map_err(|e: wharm_core::Error| e.to_string())
}

pub fn angle(s: &str) -> Result<Angle, String> {
    s.parse().map_err(|e: wharm_core::Error| e.to_string())
}

fn real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    s.parse().map_err(|_| format!("not a number: {s:?}"))
}

/// `re,im` or a bare real part.
pub fn complex(s: &str) -> Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(real(re)?, real(im)?)),
        None => Ok(Complex64::new(real(s)?, 0.0)),
    }
}

pub fn complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(complex).collect()
}

/// `k:re,im;k:re,im;…`
pub fn fourier_list(s: &str) -> Result<Vec<(i64, Complex64)>, String> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|part| {
            let (k, c) = part.split_once(':').ok_or_else(|| format!("expected k:re,im, got {part:?}"))?;
            let k: i64 = k.trim().parse().map_err(|_| format!("bad frequency in {part:?}"))?;
            Ok((k, complex(c)?))
        })
        .collect()
}

pub fn family(arg: &str) -> Result<FunctionOfAngles, String> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| format!("bad family JSON: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_syntax() {
        assert_eq!(complex("0.5,-1").unwrap(), Complex64::new(0.5, -1.0));
        assert_eq!(complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert!(complex("a,b").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(complex_list("-1;0;1").unwrap().len(), 3);
        assert_eq!(fourier_list("1:1,0;-2:0,0.5").unwrap()[1], (-2, Complex64::new(0.0, 0.5)));
    }

    #[test]
    fn family_json() {
        let f = family(r#"[{"angle":"1/2","eta":1},{"angle":"irr:s:1.4","eta":2}]"#).unwrap();
        assert_eq!(f.entries(0).unwrap().len(), 2);
        assert!(family(r#"[{"angle":"1/2","eta":0}]"#).is_err());
    }
}
