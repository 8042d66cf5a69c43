use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::AlgebraError;

/// Parses `p/q`, an integer, or an exact decimal such as `-0.25` or `1.5e-3`.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let t = s.trim();
    let err = || AlgebraError::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if (int.is_empty() && frac.is_empty()) || !ok(int) || !ok(frac) {
        return Err(err());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| err())?;
    let ten = BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let mut q = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}
