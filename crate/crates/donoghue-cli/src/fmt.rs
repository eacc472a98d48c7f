//! Plain-text number rendering shared by the subcommands. All helpers are
//! deterministic so identical invocations stay byte-identical.

/// Drops trailing fractional zeros and normalizes "-0" to "0".
fn clean(s: String) -> String {
    let t = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if t == "-0" {
        "0".to_string()
    } else {
        t
    }
}

fn clean_exponential(s: String) -> String {
    match s.split_once('e') {
        Some((mantissa, exp)) => format!("{}e{}", clean(mantissa.to_string()), exp),
        None => s,
    }
}

/// Six-decimal rendering for the classify report: `1` for 1.0, `0.333333`
/// for 1/3.
pub fn trim6(x: f64) -> String {
    clean(format!("{x:.6}"))
}

/// Twelve-significant-digit rendering for tabular output. Zero prints as
/// `0`, the infinite entropy as `inf`; magnitudes outside the positional
/// window fall back to exponential notation.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_infinite() {
        return "inf".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        clean(format!("{x:.decimals$}"))
    } else {
        clean_exponential(format!("{x:.11e}"))
    }
}

/// `re+imi` rendering of a complex value in sig12 precision.
pub fn complex12(re: f64, im: f64) -> String {
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", sig12(re), sign, sig12(im.abs()))
}
