//! Text artifacts: roots as CSV and as an SVG scatter.

use std::fmt::Write;

use crate::analysis::{Annulus, Root};

/// `printf("%.17g", x)`: 17 significant digits, trailing zeros dropped,
/// scientific notation outside `1e-4 ≤ |x| < 1e17`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `re,im,residual` header and one line per root.
pub fn roots_csv(roots: &[Root]) -> String {
    let mut out = String::from("re,im,residual\n");
    for r in roots {
        let _ = writeln!(out, "{},{},{}", format_g17(r.re), format_g17(r.im), format_g17(r.residual));
    }
    out
}

const SIZE: f64 = 800.0;
const CENTER: f64 = SIZE / 2.0;
const REACH: f64 = 360.0;

/// Scatter plot of `roots` in the complex plane on a fixed 800×800 canvas,
/// with the annulus boundaries when given.
pub fn roots_svg(title: &str, roots: &[Root], annulus: Option<&Annulus>) -> String {
    let extent = roots
        .iter()
        .map(|r| r.z().norm())
        .chain(annulus.map(|a| a.outer))
        .fold(0.0f64, f64::max);
    let extent = if extent > 0.0 { extent * 1.05 } else { 1.0 };
    let scale = REACH / extent;
    let px = |v: f64| format!("{:.3}", v);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(out, r#"  <rect width="800" height="800" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"  <line x1="0" y1="{CENTER}" x2="{SIZE}" y2="{CENTER}" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{CENTER}" y1="0" x2="{CENTER}" y2="{SIZE}" stroke="black" stroke-width="1"/>"#
    );
    if let Some(a) = annulus {
        for (radius, class) in [(a.inner, "annulus-inner"), (a.outer, "annulus-outer")] {
            let _ = writeln!(
                out,
                r#"  <circle class="{class}" cx="{CENTER}" cy="{CENTER}" r="{}" fill="none" stroke="steelblue" stroke-dasharray="4 3"/>"#,
                px(radius * scale)
            );
        }
    }
    for r in roots {
        let _ = writeln!(
            out,
            r#"  <circle class="root" cx="{}" cy="{}" r="3" fill="crimson"/>"#,
            px(CENTER + r.re * scale),
            px(CENTER - r.im * scale)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
