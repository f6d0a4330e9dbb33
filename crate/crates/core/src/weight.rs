//! Integer weights with an infinite sentinel.
//!
//! Every arc, edge and node weight is a `u64`. [`INFINITE`] is reserved: it
//! compares above every finite weight and absorbs any sum it takes part in.

/// Weight of an element that can never be cut or deleted.
pub const INFINITE: u64 = u64::MAX;

#[inline]
pub fn is_infinite(w: u64) -> bool {
    w == INFINITE
}

/// Adds two weights; the result is [`INFINITE`] if either operand is, or if
/// the finite sum would overflow into the sentinel.
#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    if a == INFINITE || b == INFINITE {
        return INFINITE;
    }
    match a.checked_add(b) {
        Some(s) if s != INFINITE => s,
        _ => INFINITE,
    }
}

/// Sums an iterator of weights with [`add`] semantics.
pub fn sum<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(0, add)
}

/// Doubles a weight, keeping [`INFINITE`] fixed.
#[inline]
pub fn double(w: u64) -> u64 {
    add(w, w)
}

/// `a * num <= b * den` for finite `a`, `b`; used for exact ratio checks.
/// An infinite `a` never satisfies a bound, an infinite `b` always does.
pub fn ratio_le(a: u64, b: u64, num: u64, den: u64) -> bool {
    if a == INFINITE {
        return b == INFINITE;
    }
    if b == INFINITE {
        return true;
    }
    (a as u128) * (den as u128) <= (b as u128) * (num as u128)
}

/// Parses `inf` / `infinite` / a decimal integer.
pub fn parse(s: &str) -> Option<u64> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinite") {
        return Some(INFINITE);
    }
    match s.parse::<u64>() {
        Ok(v) if v != INFINITE => Some(v),
        _ => None,
    }
}
