//! Exact arithmetic in the cyclotomic field of order 16.
//!
//! Elements are stored on the power basis `1, z, …, z^7` where `z` is a fixed
//! primitive 16th root of unity and `z^8 = -1`. Coefficients are
//! arbitrary-precision rationals, so equality is exact coefficient-wise
//! equality and no rounding ever occurs. Every root of unity used by the
//! engine lives here: `-1 = z^8`, `i = z^4`, `xi = z^2` (order 8) and `z`
//! itself (order 16).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Number of power-basis coefficients (`z^0 … z^7`).
pub const DEGREE: usize = 8;

/// An element of the 16th cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    coeffs: [BigRational; DEGREE],
}

/// `N(q)`: the multiplicative order of a root of unity, with the
/// characteristic-zero convention `N(1) = infinity` and `N(q) = infinity`
/// for q not a root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nq {
    Finite(u32),
    Infinite,
}

impl Nq {
    pub fn finite(self) -> Option<u32> {
        match self {
            Nq::Finite(n) => Some(n),
            Nq::Infinite => None,
        }
    }
}

impl fmt::Display for Nq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nq::Finite(n) => write!(f, "{n}"),
            Nq::Infinite => write!(f, "infinity"),
        }
    }
}

fn zero_coeffs() -> [BigRational; DEGREE] {
    Default::default()
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar {
            coeffs: zero_coeffs(),
        }
    }

    pub fn one() -> Self {
        Self::zeta_pow(0)
    }

    pub fn minus_one() -> Self {
        Self::zeta_pow(8)
    }

    /// `i`, the fixed fourth root of unity; `i = xi^2`.
    pub fn i() -> Self {
        Self::zeta_pow(4)
    }

    /// `xi`, the fixed eighth root of unity; `xi^2 = i`.
    pub fn xi() -> Self {
        Self::zeta_pow(2)
    }

    /// The fixed primitive 16th root of unity.
    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// `z^k` for any integer exponent, reduced via `z^8 = -1`.
    pub fn zeta_pow(k: i64) -> Self {
        let e = k.rem_euclid(16) as usize;
        let mut coeffs = zero_coeffs();
        if e < 8 {
            coeffs[e] = BigRational::one();
        } else {
            coeffs[e - 8] = -BigRational::one();
        }
        CycScalar { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        let mut coeffs = zero_coeffs();
        coeffs[0] = BigRational::from_integer(BigInt::from(n));
        CycScalar { coeffs }
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = zero_coeffs();
        coeffs[0] = r;
        CycScalar { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational; DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// If `self = c * z^k` for a single basis power, returns `(k, c)`.
    pub fn as_monomial(&self) -> Option<(usize, &BigRational)> {
        let mut hit = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if hit.is_some() {
                    return None;
                }
                hit = Some((k, c));
            }
        }
        hit
    }

    /// If `self = z^e` for some `e` in `0..16` (so `e >= 8` encodes
    /// `-z^(e-8)`), returns `e`. These are exactly the roots of unity of the
    /// field.
    pub fn as_root_of_unity(&self) -> Option<u8> {
        let (k, c) = self.as_monomial()?;
        if c.is_one() {
            Some(k as u8)
        } else if (-c).is_one() {
            Some((k + 8) as u8)
        } else {
            None
        }
    }

    /// Multiplicative order when `self` is a root of unity.
    pub fn root_order(&self) -> Option<u32> {
        let e = self.as_root_of_unity()? as u32;
        if e == 0 {
            return Some(1);
        }
        Some(16 / num_integer::gcd(16, e))
    }

    /// `N(q)` in characteristic zero.
    pub fn nq(&self) -> Nq {
        if self.is_one() {
            return Nq::Infinite;
        }
        match self.root_order() {
            Some(n) => Nq::Finite(n),
            None => Nq::Infinite,
        }
    }

    /// Multiply by `z^e`, `e` in `0..16`; a coefficient rotation, no bigint
    /// multiplication.
    pub fn mul_root_assign(&mut self, e: u8) {
        let e = (e as usize) % 16;
        if e == 0 {
            return;
        }
        let old = std::mem::replace(&mut self.coeffs, zero_coeffs());
        for (k, c) in old.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = k + e;
            if (t / 8) % 2 == 1 {
                self.coeffs[t % 8] = -c;
            } else {
                self.coeffs[t % 8] = c;
            }
        }
    }

    pub fn scale_assign(&mut self, r: &BigRational) {
        for c in self.coeffs.iter_mut() {
            if !c.is_zero() {
                *c *= r;
            }
        }
    }

    pub fn inv(&self) -> Result<CycScalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((k, c)) = self.as_monomial() {
            // (c z^k)^-1 = c^-1 z^-k
            let mut out = Self::zeta_pow(-(k as i64));
            out.scale_assign(&c.recip());
            return Ok(out);
        }
        // Solve M x = e0 where M is the multiplication-by-self matrix on the
        // power basis.
        let mut m = vec![vec![BigRational::zero(); DEGREE + 1]; DEGREE];
        for k in 0..DEGREE {
            // column k: self * z^k
            let mut col = self.clone();
            col.mul_root_assign(k as u8);
            for r in 0..DEGREE {
                m[r][k] = col.coeffs[r].clone();
            }
        }
        m[0][DEGREE] = BigRational::one();
        // Gaussian elimination, exact.
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..DEGREE {
            let Some(p) = (row..DEGREE).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for c in col..=DEGREE {
                let v = std::mem::replace(&mut m[row][c], BigRational::zero());
                m[row][c] = v * &inv;
            }
            for r in 0..DEGREE {
                if r != row && !m[r][col].is_zero() {
                    let f = std::mem::replace(&mut m[r][col], BigRational::zero());
                    for c in (col + 1)..=DEGREE {
                        let sub = &m[row][c] * &f;
                        m[r][c] -= sub;
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == DEGREE {
                break;
            }
        }
        let mut coeffs = zero_coeffs();
        for (r, c) in pivots {
            coeffs[c] = m[r][DEGREE].clone();
        }
        let out = CycScalar { coeffs };
        debug_assert!((out.clone() * self.clone()).is_one());
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> CycScalar {
        let mut acc = CycScalar::one();
        for _ in 0..n {
            acc *= self.clone();
        }
        acc
    }

    /// `(n)_q = 1 + q + … + q^(n-1)`.
    pub fn q_int(n: u32, q: &CycScalar) -> CycScalar {
        let mut acc = CycScalar::zero();
        let mut p = CycScalar::one();
        for _ in 0..n {
            acc += p.clone();
            p *= q.clone();
        }
        acc
    }

    /// `(n)!_q`.
    pub fn q_factorial(n: u32, q: &CycScalar) -> CycScalar {
        let mut acc = CycScalar::one();
        for k in 1..=n {
            acc *= Self::q_int(k, q);
        }
        acc
    }

    /// Gaussian binomial, computed by the Pascal recurrence so it is defined
    /// even when intermediate q-factorials vanish.
    pub fn q_binomial(n: u32, m: u32, q: &CycScalar) -> CycScalar {
        if m > n {
            return CycScalar::zero();
        }
        let mut row = vec![CycScalar::one()];
        for _ in 1..=n {
            let mut next = vec![CycScalar::one()];
            for k in 1..row.len() {
                // C(t, k) = C(t-1, k-1) + q^k C(t-1, k)
                let mut t = row[k].clone();
                t.mul_assign(q.pow(k as u32));
                next.push(row[k - 1].clone() + t);
            }
            next.push(CycScalar::one());
            row = next;
        }
        row[m as usize].clone()
    }

    /// Parses the short entry syntax used on the command line for braiding
    /// matrices: `1`, `-1`, `i`, `-i`, `x` (= xi), `z`, powers like `x^3`,
    /// rationals like `1/2`, and falls back to the full textual form.
    pub fn parse_symbol(s: &str) -> Result<CycScalar, Error> {
        let t = s.trim();
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        let base = |sym: &str, exp: i64| -> Option<CycScalar> {
            match sym {
                "i" => Some(CycScalar::zeta_pow(4 * exp)),
                "x" | "xi" => Some(CycScalar::zeta_pow(2 * exp)),
                "z" | "zeta" => Some(CycScalar::zeta_pow(exp)),
                _ => None,
            }
        };
        let parsed = if let Some((sym, e)) = t.split_once('^') {
            let exp: i64 = e.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            base(sym.trim(), exp)
        } else {
            base(t, 1)
        };
        let v = match parsed {
            Some(v) => v,
            None => {
                if let Ok(r) = BigRational::from_str(t) {
                    CycScalar::from_rational(r)
                } else {
                    let full: CycScalar = t.parse()?;
                    full
                }
            }
        };
        Ok(if neg { -v } else { v })
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one() && k != 0;
            if !unit_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => {
                    if !unit_coeff {
                        write!(f, "*")?;
                    }
                    write!(f, "z")?;
                }
                _ => {
                    if !unit_coeff {
                        write!(f, "*")?;
                    }
                    write!(f, "z^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for CycScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse(s.into()));
        }
        if s == "0" {
            return Ok(CycScalar::zero());
        }
        // Split into signed terms at top level (no parentheses in the format).
        let mut acc = CycScalar::zero();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut idx = 0;
        let mut terms = Vec::new();
        while idx < bytes.len() {
            if (bytes[idx] == b'+' || bytes[idx] == b'-')
                && idx > start
                && bytes[idx - 1] != b'^'
                && bytes[idx - 1] != b'/'
            {
                terms.push(&s[start..idx]);
                start = idx;
            }
            idx += 1;
        }
        terms.push(&s[start..]);
        for term in terms {
            let t = term.trim();
            if t.is_empty() || t == "+" {
                continue;
            }
            let (sign, body) = match t.strip_prefix('-') {
                Some(rest) => (-1i64, rest.trim()),
                None => (1i64, t.strip_prefix('+').unwrap_or(t).trim()),
            };
            let (coeff_str, power) = if let Some(pos) = body.find('z') {
                let coeff = body[..pos].trim().trim_end_matches('*').trim();
                let rest = body[pos + 1..].trim();
                let power = if let Some(e) = rest.strip_prefix('^') {
                    e.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(s.into()))?
                } else if rest.is_empty() {
                    1
                } else {
                    return Err(Error::Parse(s.into()));
                };
                (coeff, power)
            } else {
                (body, 0)
            };
            if power >= DEGREE {
                return Err(Error::Parse(s.into()));
            }
            let coeff = if coeff_str.is_empty() {
                BigRational::one()
            } else {
                BigRational::from_str(coeff_str).map_err(|_| Error::Parse(s.into()))?
            };
            let mut term_val = CycScalar::zeta_pow(power as i64);
            term_val.scale_assign(&coeff);
            if sign < 0 {
                term_val = -term_val;
            }
            acc += term_val;
        }
        Ok(acc)
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(mut self, rhs: CycScalar) -> CycScalar {
        self += rhs;
        self
    }
}

impl AddAssign for CycScalar {
    fn add_assign(&mut self, rhs: CycScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(mut self, rhs: CycScalar) -> CycScalar {
        self -= rhs;
        self
    }
}

impl SubAssign for CycScalar {
    fn sub_assign(&mut self, rhs: CycScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(mut self) -> CycScalar {
        for c in self.coeffs.iter_mut() {
            if !c.is_zero() {
                let v = std::mem::replace(c, BigRational::zero());
                *c = -v;
            }
        }
        self
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(mut self, rhs: CycScalar) -> CycScalar {
        self *= rhs;
        self
    }
}

impl<'a> Mul<&'a CycScalar> for CycScalar {
    type Output = CycScalar;
    fn mul(mut self, rhs: &'a CycScalar) -> CycScalar {
        self.mul_assign_ref(rhs);
        self
    }
}

impl MulAssign for CycScalar {
    fn mul_assign(&mut self, rhs: CycScalar) {
        self.mul_assign_ref(&rhs);
    }
}

impl CycScalar {
    pub fn mul_assign_ref(&mut self, rhs: &CycScalar) {
        if self.is_zero() {
            return;
        }
        if rhs.is_zero() {
            *self = CycScalar::zero();
            return;
        }
        // Monomial fast path: one side a single basis power.
        if let Some((k, c)) = rhs.as_monomial() {
            self.mul_root_assign(k as u8);
            if !c.is_one() {
                self.scale_assign(c);
            }
            return;
        }
        if let Some((k, c)) = self.as_monomial() {
            let mut out = rhs.clone();
            out.mul_root_assign(k as u8);
            if !c.is_one() {
                out.scale_assign(c);
            }
            *self = out;
            return;
        }
        let mut out = zero_coeffs();
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = k + l;
                let prod = a * b;
                if (t / 8) % 2 == 1 {
                    out[t % 8] -= prod;
                } else {
                    out[t % 8] += prod;
                }
            }
        }
        self.coeffs = out;
    }
}

impl num_traits::Zero for CycScalar {
    fn zero() -> Self {
        CycScalar::zero()
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
}

impl num_traits::One for CycScalar {
    fn one() -> Self {
        CycScalar::one()
    }
    fn is_one(&self) -> bool {
        CycScalar::is_one(self)
    }
}

impl crate::linalg::Field for CycScalar {
    fn inv(&self) -> Option<Self> {
        CycScalar::inv(self).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants_satisfy_defining_relations() {
        assert_eq!(CycScalar::i() * CycScalar::i(), CycScalar::minus_one());
        assert_eq!(CycScalar::xi() * CycScalar::xi(), CycScalar::i());
        assert_eq!(CycScalar::zeta().pow(8), CycScalar::minus_one());
        assert_eq!(CycScalar::zeta().pow(16), CycScalar::one());
    }

    #[test]
    fn inversion() {
        assert_eq!(CycScalar::i().inv().unwrap(), -CycScalar::i());
        let a: CycScalar = "1 + 2*z - 1/3*z^5".parse().unwrap();
        assert_eq!(a.clone() * a.inv().unwrap(), CycScalar::one());
        assert!(CycScalar::zero().inv().is_err());
    }

    #[test]
    fn root_orders() {
        assert_eq!(CycScalar::minus_one().root_order(), Some(2));
        assert_eq!(CycScalar::zeta().root_order(), Some(16));
        assert_eq!(CycScalar::xi().root_order(), Some(8));
        assert_eq!(CycScalar::from_int(2).root_order(), None);
        assert_eq!((-CycScalar::i()).root_order(), Some(4));
    }

    #[test]
    fn nq_values() {
        assert_eq!(CycScalar::minus_one().nq(), Nq::Finite(2));
        assert_eq!(CycScalar::one().nq(), Nq::Infinite);
        assert_eq!(CycScalar::i().nq(), Nq::Finite(4));
        assert_eq!(CycScalar::from_int(3).nq(), Nq::Infinite);
    }

    #[test]
    fn q_factorial_vanishes_exactly_at_the_order() {
        for q in [
            CycScalar::minus_one(),
            CycScalar::i(),
            CycScalar::xi(),
            CycScalar::zeta(),
        ] {
            let n = q.root_order().unwrap();
            for k in 1..n {
                assert!(!CycScalar::q_factorial(k, &q).is_zero(), "k={k}");
            }
            assert!(CycScalar::q_factorial(n, &q).is_zero());
        }
    }

    #[test]
    fn q_binomial_matches_factorial_quotient() {
        let q = CycScalar::i();
        // (4 choose 2)_i where the quotient is defined
        let num = CycScalar::q_factorial(3, &q);
        let den = CycScalar::q_factorial(1, &q) * CycScalar::q_factorial(2, &q);
        let expect = num * den.inv().unwrap();
        assert_eq!(CycScalar::q_binomial(3, 1, &q), expect);
    }

    #[test]
    fn parse_symbols() {
        assert_eq!(
            CycScalar::parse_symbol("-1").unwrap(),
            CycScalar::minus_one()
        );
        assert_eq!(CycScalar::parse_symbol("i").unwrap(), CycScalar::i());
        assert_eq!(CycScalar::parse_symbol("x").unwrap(), CycScalar::xi());
        assert_eq!(
            CycScalar::parse_symbol("x^3").unwrap(),
            CycScalar::xi().pow(3)
        );
        assert_eq!(
            CycScalar::parse_symbol("z^5").unwrap(),
            CycScalar::zeta().pow(5)
        );
        assert_eq!(CycScalar::parse_symbol("-i").unwrap(), -CycScalar::i());
    }

    fn arb_scalar() -> impl Strategy<Value = CycScalar> {
        proptest::collection::vec(-6i64..=6, 8).prop_map(|v| {
            let mut acc = CycScalar::zero();
            for (k, n) in v.into_iter().enumerate() {
                let mut t = CycScalar::zeta_pow(k as i64);
                t.scale_assign(&BigRational::from_integer(BigInt::from(n)));
                acc += t;
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            prop_assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            if !a.is_zero() {
                prop_assert_eq!(a.clone() * a.inv().unwrap(), CycScalar::one());
            }
        }

        #[test]
        fn render_parse_round_trip(a in arb_scalar()) {
            let s = a.to_string();
            let back: CycScalar = s.parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
