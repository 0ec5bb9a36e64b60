//! Exact rational scalars and certified real enclosures.
//!
//! Distances, LP coefficients and certificates are `BigRational` throughout.
//! Quantities that leave the rationals (entropies, fractional powers) are
//! carried as dyadic [`RatInterval`] enclosures whose endpoints are exact, so
//! every sign decision downstream is either certified or explicitly
//! indeterminate (in which case callers escalate the precision).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back to a scaled division for extreme magnitudes
        let num = r.numer().to_f64().unwrap_or(f64::MAX);
        let den = r.denom().to_f64().unwrap_or(f64::MAX);
        num / den
    })
}

/// Render as `p/q`, or just `p` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse {0:?} as a rational number")]
pub struct ParseRatError(pub String);

/// Accepts `p/q`, decimal (`3.25`, `-0.5`) and integer strings.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    let err = || ParseRatError(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| err())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits: BigInt = frac.parse().map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(digits, scale);
        let int_part = Rat::from_integer(int);
        return Ok(if neg {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    let p: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(p))
}

/// Serde adapter: rationals as `p/q` strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: vectors of rationals.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// Closed interval with exact rational endpoints, `lo <= hi`.
#[derive(Clone, PartialEq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", rat_to_string(&self.lo))
        } else {
            write!(f, "[{}, {}]", rat_to_string(&self.lo), rat_to_string(&self.hi))
        }
    }
}

impl RatInterval {
    pub fn point(r: Rat) -> Self {
        Self { lo: r.clone(), hi: r }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn zero() -> Self {
        Self::point(Rat::zero())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        (rat_to_f64(&self.lo) + rat_to_f64(&self.hi)) / 2.0
    }

    /// `Some(sign)` when the sign is certain; `None` when the interval
    /// straddles zero without being the exact point zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Pos)
        } else if self.hi.is_negative() {
            Some(Sign::Neg)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_negative() {
            Self::new(&self.hi * r, &self.lo * r)
        } else {
            Self::new(&self.lo * r, &self.hi * r)
        }
    }

    /// None if the divisor interval contains zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        match o.sign()? {
            Sign::Zero => None,
            _ => {
                let cands = [
                    &self.lo / &o.lo,
                    &self.lo / &o.hi,
                    &self.hi / &o.lo,
                    &self.hi / &o.hi,
                ];
                let lo = cands.iter().min().unwrap().clone();
                let hi = cands.iter().max().unwrap().clone();
                Some(Self::new(lo, hi))
            }
        }
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    /// Certified comparison against a rational; None when undecidable.
    pub fn cmp_rat(&self, r: &Rat) -> Option<Ordering> {
        if &self.hi < r {
            Some(Ordering::Less)
        } else if &self.lo > r {
            Some(Ordering::Greater)
        } else if self.is_point() && &self.lo == r {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

fn pow2_rat(k: i64) -> Rat {
    if k >= 0 {
        Rat::from_integer(BigInt::one() << (k as usize))
    } else {
        Rat::new(BigInt::one(), BigInt::one() << ((-k) as usize))
    }
}

/// Certified base-2 logarithm of a positive rational.
///
/// Returns an enclosure of width at most `2^-prec`. Exact (point) for powers
/// of two. Uses the classical squaring recurrence on directed fixed-point
/// mantissas, so both endpoints are rigorous.
pub fn log2_interval(x: &Rat, prec: u32) -> RatInterval {
    assert!(x.is_positive(), "log2 of non-positive value");
    let a = x.numer().magnitude().clone();
    let b = x.denom().magnitude().clone();
    let la = log2_biguint(&a, prec + 2);
    let lb = log2_biguint(&b, prec + 2);
    la.sub(&lb)
}

/// Certified `lb n` for a positive big integer.
fn log2_biguint(n: &BigUint, prec: u32) -> RatInterval {
    assert!(!n.is_zero());
    let e = (n.bits() - 1) as i64;
    // exact power of two
    if n.count_ones() == 1 {
        return RatInterval::point(rat_i(e));
    }
    // guard bits so the doubling relative error stays under 2^-prec
    let f = (2 * prec + 16) as u64;
    // mantissa m = n / 2^e in [1,2), fixed point with f fraction bits
    let (mut mlo, mut mhi): (BigUint, BigUint) = {
        let shifted = n << f;
        let q = &shifted >> (e as u64);
        let exact = (&q << (e as u64)) == shifted;
        if exact {
            (q.clone(), q)
        } else {
            let q1 = &q + 1u32;
            (q, q1)
        }
    };
    let one_fp = BigUint::one() << f;
    let two_fp = &one_fp << 1u8;
    let mut bits_lo = BigUint::zero();
    let mut bits_hi = BigUint::zero();
    let mut emitted = 0u32;
    while emitted < prec {
        // square with directed rounding back to f fraction bits
        let slo = (&mlo * &mlo) >> f;
        let shi_raw = &mhi * &mhi;
        let mut shi = &shi_raw >> f;
        if (&shi << f) != shi_raw {
            shi += 1u32;
        }
        mlo = slo;
        mhi = shi;
        bits_lo <<= 1;
        bits_hi <<= 1;
        if mlo >= two_fp {
            // both halves agree: bit 1
            bits_lo += 1u32;
            bits_hi += 1u32;
            mlo >>= 1;
            let odd = mhi.is_odd();
            mhi >>= 1;
            if odd {
                mhi += 1u32;
            }
        } else if mhi < two_fp {
            // bit 0 certain, nothing to halve
        } else {
            // endpoints disagree on this bit: lo keeps bit 0, hi takes bit 1
            bits_hi += 1u32;
            let odd = mhi.is_odd();
            mhi >>= 1;
            if odd {
                mhi += 1u32;
            }
        }
        emitted += 1;
        if mhi < mlo {
            mhi = mlo.clone();
        }
    }
    let denom = BigInt::one() << emitted;
    let lo = rat_i(e) + Rat::new(BigInt::from(bits_lo), denom.clone());
    let hi = rat_i(e) + Rat::new(BigInt::from(bits_hi) + 1, denom);
    RatInterval::new(lo, hi)
}

/// Certified `x^alpha` for `x >= 0` and rational `alpha >= 0`.
///
/// Exact whenever the result is rational (integer exponents, or perfect
/// q-th powers); otherwise a dyadic enclosure of width `<= 2^(1-prec)`.
pub fn pow_interval(x: &Rat, alpha: &Rat, prec: u32) -> RatInterval {
    assert!(!x.is_negative(), "negative base");
    assert!(!alpha.is_negative(), "negative exponent");
    if alpha.is_zero() {
        return RatInterval::point(Rat::one());
    }
    if x.is_zero() {
        return RatInterval::zero();
    }
    if x.is_one() {
        return RatInterval::point(Rat::one());
    }
    let p = alpha
        .numer()
        .to_u32()
        .expect("exponent numerator too large");
    let q = alpha
        .denom()
        .to_u32()
        .expect("exponent denominator too large");
    let z = pow_rat(x, p);
    if q == 1 {
        return RatInterval::point(z);
    }
    let zn = z.numer().magnitude().clone();
    let zd = z.denom().magnitude().clone();
    // exact rational root?
    let rn = zn.nth_root(q);
    let rd = zd.nth_root(q);
    if rn.pow(q) == zn && rd.pow(q) == zd {
        return RatInterval::point(Rat::new(BigInt::from(rn), BigInt::from(rd)));
    }
    // floor((zn/zd * 2^(q*prec))^(1/q)) brackets the root within 2 ulps
    let f = prec as u64;
    let t = (zn << (q as u64 * f)) / zd;
    let r = t.nth_root(q);
    let denom = BigInt::one() << f;
    let lo = Rat::new(BigInt::from(r.clone()), denom.clone());
    let hi = Rat::new(BigInt::from(r) + 2, denom);
    RatInterval::new(lo, hi)
}

fn pow_rat(x: &Rat, p: u32) -> Rat {
    let mut acc = Rat::one();
    let mut base = x.clone();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-1/3").unwrap(), rat(-1, 3));
        assert_eq!(parse_rat("3.25").unwrap(), rat(13, 4));
        assert_eq!(parse_rat("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat_i(7));
        assert_eq!(rat_to_string(&rat(6, 4)), "3/2");
        assert_eq!(rat_to_string(&rat_i(-2)), "-2");
        assert!(parse_rat("x/y").is_err());
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn log2_exact_powers() {
        assert_eq!(log2_interval(&rat_i(1), 64), RatInterval::point(rat_i(0)));
        assert_eq!(log2_interval(&rat_i(1024), 64), RatInterval::point(rat_i(10)));
        assert_eq!(log2_interval(&rat(1, 2), 64), RatInterval::point(rat_i(-1)));
    }

    #[test]
    fn log2_enclosures() {
        for (x, truth) in [
            (rat_i(3), 3f64.log2()),
            (rat_i(10), 10f64.log2()),
            (rat(3, 2), 1.5f64.log2()),
            (rat(1, 3), (1.0f64 / 3.0).log2()),
            (rat(22, 7), (22.0f64 / 7.0).log2()),
        ] {
            let iv = log2_interval(&x, 80);
            assert!(rat_to_f64(&iv.lo) <= truth + 1e-12, "{x:?}");
            assert!(rat_to_f64(&iv.hi) >= truth - 1e-12, "{x:?}");
            assert!(iv.width() <= pow2_rat(-78), "width {:?}", iv.width());
        }
    }

    #[test]
    fn pow_exact_cases() {
        assert_eq!(
            pow_interval(&rat_i(4), &rat(1, 2), 64),
            RatInterval::point(rat_i(2))
        );
        assert_eq!(
            pow_interval(&rat(9, 4), &rat(1, 2), 64),
            RatInterval::point(rat(3, 2))
        );
        assert_eq!(
            pow_interval(&rat_i(8), &rat(2, 3), 64),
            RatInterval::point(rat_i(4))
        );
        assert_eq!(
            pow_interval(&rat_i(5), &rat_i(2), 64),
            RatInterval::point(rat_i(25))
        );
        assert_eq!(pow_interval(&rat_i(0), &rat(1, 2), 64), RatInterval::zero());
    }

    #[test]
    fn pow_enclosures() {
        for (x, a, truth) in [
            (rat_i(2), rat(1, 2), 2f64.sqrt()),
            (rat_i(2), rat(3, 10), 2f64.powf(0.3)),
            (rat_i(4), rat(29, 100), 4f64.powf(0.29)),
            (rat(7, 3), rat(2, 5), (7f64 / 3.0).powf(0.4)),
        ] {
            let iv = pow_interval(&x, &a, 96);
            assert!(rat_to_f64(&iv.lo) <= truth + 1e-12);
            assert!(rat_to_f64(&iv.hi) >= truth - 1e-12);
            assert!(iv.width() <= pow2_rat(-90));
        }
    }

    #[test]
    fn interval_arith_signs() {
        let a = RatInterval::new(rat_i(1), rat_i(2));
        let b = RatInterval::new(rat_i(-3), rat_i(-1));
        assert_eq!(a.sign(), Some(Sign::Pos));
        assert_eq!(b.sign(), Some(Sign::Neg));
        assert_eq!(a.add(&b).sign(), None);
        assert_eq!(a.mul(&b).hi, rat_i(-1));
        assert_eq!(RatInterval::zero().sign(), Some(Sign::Zero));
        assert!(a.div(&RatInterval::new(rat_i(-1), rat_i(1))).is_none());
    }
}
