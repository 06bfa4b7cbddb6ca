use inellipse_core::ConicCoeffs;

/// Column order of `family` CSV output.
pub const FAMILY_COLUMNS: &str =
    "index,parameter_kind,parameter,area,center_x,center_y,semi_major,semi_minor,phi";
/// Column order of `conjecture` CSV output.
pub const CONJECTURE_COLUMNS: &str = "index,stratum,x0,y0,x1,y1,x2,y2,x3,y3,ratio,gap";
/// Column order of `analyze` CSV output.
pub const ANALYZE_COLUMNS: &str =
    "x0,y0,x1,y1,x2,y2,x3,y3,area,parallelogram,trapezoid,tangential,m1_x,m1_y,m2_x,m2_y,s,t";

/// Float with 17 significant digits, which round-trips every `f64`.
pub fn csv_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

fn display_coefficient(v: f64, tol: f64) -> String {
    let r = v.round();
    if (v - r).abs() <= tol * v.abs().max(1.0) {
        format!("{}", r as i64)
    } else {
        format!("{v}")
    }
}

/// `Ax² + By² + 2Cxy + Dx + Ey + F = 0` as text, divided by the smallest
/// nonzero coefficient magnitude and with a positive leading term; values
/// within `tol` of an integer print as integers.
pub fn conic_equation(c: &ConicCoeffs, tol: f64) -> String {
    let raw = [c.a, c.b, 2.0 * c.c, c.d, c.e, c.f];
    let max = raw.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return "0 = 0".to_string();
    }
    let kept: Vec<f64> = raw
        .iter()
        .map(|v| if v.abs() <= tol * max { 0.0 } else { *v })
        .collect();
    let min = kept
        .iter()
        .filter(|v| **v != 0.0)
        .fold(f64::INFINITY, |m, v| m.min(v.abs()));
    let lead = kept.iter().find(|v| **v != 0.0).copied().unwrap_or(1.0);
    let sign = lead.signum();
    let names = ["x^2", "y^2", "xy", "x", "y", ""];
    let mut out = String::new();
    for (v, name) in kept.iter().zip(names) {
        if *v == 0.0 {
            continue;
        }
        let v = sign * v / min;
        let text = display_coefficient(v.abs(), tol);
        let body = if text == "1" && !name.is_empty() {
            name.to_string()
        } else {
            format!("{text}{name}")
        };
        match (out.is_empty(), v < 0.0) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    out.push_str(" = 0");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_equation() {
        let c = ConicCoeffs::new(8.0, 2.0, 0.0, -8.0, -4.0, 2.0);
        assert_eq!(conic_equation(&c, 1e-9), "4x^2 + y^2 - 4x - 2y + 1 = 0");
        assert_eq!(
            conic_equation(&c.scaled(-0.37), 1e-9),
            "4x^2 + y^2 - 4x - 2y + 1 = 0"
        );
    }

    #[test]
    fn cross_term_and_fractions() {
        let c = ConicCoeffs::new(2.0, 3.0, 0.5, 0.0, 0.0, -1.5);
        assert_eq!(conic_equation(&c, 1e-9), "2x^2 + 3y^2 + xy - 1.5 = 0");
        let noisy = ConicCoeffs::new(4.000000000001, 1.0, 1e-17, -4.0, -2.0, 1.0);
        assert_eq!(conic_equation(&noisy, 1e-9), "4x^2 + y^2 - 4x - 2y + 1 = 0");
    }

    #[test]
    fn csv_numbers_roundtrip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 12345.678901234567] {
            assert_eq!(csv_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(csv_f64(f64::NAN), "");
    }
}
