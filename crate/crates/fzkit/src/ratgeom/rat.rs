//! Exact rationals and rational vectors.
//!
//! `Rat` wraps `num_rational::BigRational`, which already keeps numerator and
//! denominator coprime with a positive denominator. The wrapper exists so the
//! JSON shape (`["num","den"]`, decimal strings) and the `p/q` text shape are
//! fixed in one place.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Deref, Div, Index, IndexMut, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Option<Rat> {
        if den.is_zero() {
            None
        } else {
            Some(Rat(BigRational::new(num, den)))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// `max(self, 0)`.
    pub fn pos(&self) -> Rat {
        if self.is_negative() {
            Rat::zero()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, k: u32) -> Rat {
        let mut out = Rat::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn min(a: &Rat, b: &Rat) -> Rat {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Rat, b: &Rat) -> Rat {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Lossy conversion, used only for file formats that need decimals (OFF).
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an exact rational \"{0}\" (expected p or p/q with integers p, q)")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p` or `p/q`; decimals are rejected so nothing is rounded.
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let bad = || ParseRatError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Rat::from_bigints(n, d).ok_or_else(bad)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat(BigRational::from_integer(n))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Accepts `"p/q"` strings (the emitted form) and `["p", "q"]` pairs.
impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Text(String),
            Pair([String; 2]),
        }
        match Wire::deserialize(d)? {
            Wire::Text(t) => t.parse().map_err(D::Error::custom),
            Wire::Pair([n, den]) => {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let den: BigInt = den.parse().map_err(D::Error::custom)?;
                Rat::from_bigints(n, den).ok_or_else(|| D::Error::custom("zero denominator"))
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat((&self.0).$m(o.0))
            }
        }
        impl $atr<&Rat> for Rat {
            fn $am(&mut self, o: &Rat) {
                self.0.$am(&o.0);
            }
        }
        impl $atr<Rat> for Rat {
            fn $am(&mut self, o: Rat) {
                self.0.$am(o.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, o: &Rat) -> Rat {
        Rat(&self.0 / &o.0)
    }
}

impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, o: Rat) -> Rat {
        Rat(self.0 / o.0)
    }
}

impl Div<&Rat> for Rat {
    type Output = Rat;
    fn div(self, o: &Rat) -> Rat {
        Rat(self.0 / &o.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

/// Shorthand for `Rat::new`.
pub fn q(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

/// Shorthand for `Rat::int`.
pub fn qi(n: i64) -> Rat {
    Rat::int(n)
}

/// Fixed-length rational vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVec(Vec<Rat>);

impl QVec {
    pub fn new(coords: Vec<Rat>) -> QVec {
        QVec(coords)
    }

    pub fn zeros(dim: usize) -> QVec {
        QVec(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> QVec {
        let mut v = QVec::zeros(dim);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> QVec {
        QVec(xs.iter().map(|&x| Rat::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_vec(self) -> Vec<Rat> {
        self.0
    }

    pub fn dot(&self, o: &QVec) -> Rat {
        debug_assert_eq!(self.dim(), o.dim());
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, k: &Rat) -> QVec {
        QVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn add(&self, o: &QVec) -> QVec {
        QVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &QVec) -> QVec {
        QVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> QVec {
        QVec(self.0.iter().map(|a| -a).collect())
    }

    /// `self + k * o`.
    pub fn axpy(&self, k: &Rat, o: &QVec) -> QVec {
        QVec(self.0.iter().zip(&o.0).map(|(a, b)| a + k * b).collect())
    }

    /// Drops coordinate `i`.
    pub fn remove(&self, i: usize) -> QVec {
        let mut v = self.0.clone();
        v.remove(i);
        QVec(v)
    }

    pub fn pick(&self, idx: &[usize]) -> QVec {
        QVec(idx.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn push(&mut self, x: Rat) {
        self.0.push(x);
    }

    /// Positive multiple with coprime integer coordinates; zero stays zero.
    pub fn primitive(&self) -> QVec {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for a in &self.0 {
            lcm = lcm.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|a| a.numer() * (&lcm / a.denom())).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        QVec(ints.into_iter().map(|x| Rat::from(x / &g)).collect())
    }
}

impl Deref for QVec {
    type Target = [Rat];
    fn deref(&self) -> &[Rat] {
        &self.0
    }
}

impl Index<usize> for QVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVec {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl From<Vec<Rat>> for QVec {
    fn from(v: Vec<Rat>) -> QVec {
        QVec(v)
    }
}

impl FromIterator<Rat> for QVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(it: I) -> QVec {
        QVec(it.into_iter().collect())
    }
}

impl IntoIterator for QVec {
    type Item = Rat;
    type IntoIter = std::vec::IntoIter<Rat>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a QVec {
    type Item = &'a Rat;
    type IntoIter = std::slice::Iter<'a, Rat>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Builds a `QVec` from rationals or integers: `qv![1, q(1, 2), 0]`.
#[macro_export]
macro_rules! qv {
    ($($x:expr),* $(,)?) => {
        $crate::ratgeom::QVec::new(vec![$($crate::ratgeom::Rat::from($x)),*])
    };
}

impl From<&Rat> for Rat {
    fn from(r: &Rat) -> Rat {
        r.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/4".parse::<Rat>().unwrap(), q(3, 4));
        assert_eq!("-6/8".parse::<Rat>().unwrap(), q(-3, 4));
        assert_eq!("5".parse::<Rat>().unwrap(), qi(5));
        assert!("0.5".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(q(-59, 126).to_string(), "-59/126");
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&q(-3, 4)).unwrap();
        assert_eq!(s, r#""-3/4""#);
        assert_eq!(serde_json::from_str::<Rat>(&s).unwrap(), q(-3, 4));
        assert_eq!(serde_json::from_str::<Rat>(r#""7""#).unwrap(), qi(7));
        assert!(serde_json::from_str::<Rat>(r#""0.5""#).is_err());
        let back: Rat = serde_json::from_str(r#"["6","-8"]"#).unwrap();
        assert_eq!(back, q(-3, 4));
        assert!(serde_json::from_str::<Rat>(r#"["1","0"]"#).is_err());
    }

    #[test]
    fn primitive_vectors() {
        let v = QVec::new(vec![q(1, 2), q(-3, 4), qi(0)]);
        assert_eq!(v.primitive(), QVec::from_ints(&[2, -3, 0]));
        assert_eq!(QVec::from_ints(&[4, 6]).primitive(), QVec::from_ints(&[2, 3]));
    }
}
