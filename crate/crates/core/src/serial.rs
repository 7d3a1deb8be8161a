//! Number formatting shared by the JSON outputs: reals are rounded to 12
//! significant digits and non-finite values become `null`.

use serde::Serializer;

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Text form used in CSV output; empty for non-finite values.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&round_sig(x)).expect("finite")
    } else {
        String::new()
    }
}

pub fn sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round_sig(*x))
    } else {
        s.serialize_none()
    }
}

pub fn sig12_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        if x.is_finite() {
            seq.serialize_element(&round_sig(*x))?;
        } else {
            seq.serialize_element(&None::<f64>)?;
        }
    }
    seq.end()
}

pub fn sig12_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig12(v, s),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_digits() {
        assert_eq!(round_sig(10.0 / 7.0), 1.42857142857);
        assert_eq!(round_sig(3.0), 3.0);
        assert_eq!(round_sig(-2.0000000000000004), -2.0);
        assert_eq!(serde_json::to_string(&Wrapper(f64::NAN)).unwrap(), "null");
        assert_eq!(serde_json::to_string(&Wrapper(0.1 + 0.2)).unwrap(), "0.3");
        assert_eq!(format_real(8.881784197001252e-16), "8.881784197e-16");
        assert_eq!(format_real(f64::INFINITY), "");
    }

    #[derive(serde::Serialize)]
    struct Wrapper(#[serde(serialize_with = "sig12")] f64);
}
