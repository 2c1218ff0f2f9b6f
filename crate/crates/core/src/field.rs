//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. Two families of
//! implementations are provided: arbitrary-precision rationals
//! ([`Rational`](crate::Rational)) and prime fields [`Fp<Q>`] with the
//! modulus fixed at compile time. Nothing here touches floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// A field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Image of an integer under the canonical ring map `Z -> F`.
    fn from_integer(value: &BigInt) -> Self;

    fn from_i64(value: i64) -> Self {
        Self::from_integer(&BigInt::from(value))
    }

    /// Zero for the rationals, the modulus for a prime field.
    fn characteristic() -> u64;

    /// Draws a random element. Prime fields sample uniformly; the rationals
    /// sample integers in `[-RATIONAL_SAMPLE_RANGE, RATIONAL_SAMPLE_RANGE]`.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Exact textual form: `num/den` for rationals, the residue for `Fp`.
    fn to_exact_string(&self) -> String;
}

/// Half-width of the integer range used by [`Field::sample`] over the rationals.
pub const RATIONAL_SAMPLE_RANGE: i64 = 1000;

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_integer(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }

    fn characteristic() -> u64 {
        0
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let v = rng.gen_range(-RATIONAL_SAMPLE_RANGE..=RATIONAL_SAMPLE_RANGE);
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_exact_string(&self) -> String {
        format_rational(self)
    }
}

/// Renders a rational as `num/den` in lowest terms with a positive denominator.
pub fn format_rational(q: &BigRational) -> String {
    // BigRational keeps itself reduced with a positive denominator.
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"a"`, `"-a"`, or `"a/b"` into a reduced rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((num, den)) => {
            let num = num.trim().parse::<BigInt>().ok()?;
            let den = den.trim().parse::<BigInt>().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
    }
}

/// Residues modulo the prime `Q`.
///
/// `Q` must be prime and below `2^63`; primality is not checked. Products are
/// formed in `u128`, so any such modulus is safe.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const Q: u64>(u64);

impl<const Q: u64> Fp<Q> {
    pub const MODULUS: u64 = Q;

    pub fn new(value: u64) -> Self {
        Fp(value % Q)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<Q>(1 % Q);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl<const Q: u64> fmt::Debug for Fp<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, Q)
    }
}

impl<const Q: u64> fmt::Display for Fp<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const Q: u64> Add for Fp<Q> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u128 + rhs.0 as u128;
        Fp((s % Q as u128) as u64)
    }
}

impl<const Q: u64> Sub for Fp<Q> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(Q - (rhs.0 - self.0))
        }
    }
}

impl<const Q: u64> Mul for Fp<Q> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % Q as u128) as u64)
    }
}

impl<const Q: u64> Neg for Fp<Q> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(Q - self.0)
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<const Q: u64> Div for Fp<Q> {
    type Output = Self;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in Fp")
    }
}

impl<const Q: u64> Zero for Fp<Q> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const Q: u64> One for Fp<Q> {
    fn one() -> Self {
        Fp(1 % Q)
    }
}

impl<const Q: u64> Field for Fp<Q> {
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(Q - 2))
        }
    }

    fn from_integer(value: &BigInt) -> Self {
        let r = value.mod_floor(&BigInt::from(Q));
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    fn from_i64(value: i64) -> Self {
        Fp((value as i128).rem_euclid(Q as i128) as u64)
    }

    fn characteristic() -> u64 {
        Q
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..Q))
    }

    fn to_exact_string(&self) -> String {
        self.0.to_string()
    }
}

/// Reduces a rational with denominator prime to `Q` into `Fp<Q>`.
pub fn reduce_rational<F: Field>(q: &BigRational) -> Option<F> {
    let num = F::from_integer(q.numer());
    let den = F::from_integer(q.denom());
    den.inverse().map(|inv| num * inv)
}

/// True when the rational is an integer.
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Sign of a rational as -1, 0, or 1.
pub fn rational_sign(q: &BigRational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `|q|` for rationals.
pub fn rational_abs(q: &BigRational) -> BigRational {
    q.abs()
}

/// Primes above `2^30` with a compiled-in field type. Randomized rank
/// computations and the modular consistency checks draw from this list.
pub const LARGE_PRIMES: [u64; 9] = [
    1_073_741_827,
    1_073_741_831,
    1_073_741_833,
    1_073_741_839,
    1_073_741_843,
    2_147_483_647,
    2_147_483_659,
    4_294_967_291,
    2_305_843_009_213_693_951,
];

/// Small primes, used to probe base-change drops.
pub const SMALL_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Every modulus accepted by [`with_prime_field!`](crate::with_prime_field).
pub fn supported_primes() -> Vec<u64> {
    SMALL_PRIMES
        .iter()
        .chain(LARGE_PRIMES.iter())
        .copied()
        .collect()
}

/// The default large prime for a requested bit size (31, 32 or 61).
pub fn default_prime_for_bits(bits: u32) -> Option<u64> {
    match bits {
        31 => Some(2_147_483_647),
        32 => Some(4_294_967_291),
        61 => Some(2_305_843_009_213_693_951),
        _ => None,
    }
}

/// Runs `$body` with `$f` bound to `Fp<q>` for a runtime prime `q`.
///
/// Evaluates to `Some(body)` when `q` is one of [`supported_primes`], `None`
/// otherwise.
///
/// ```
/// use dstm::with_prime_field;
/// use dstm::field::Field;
/// let c = with_prime_field!(2_147_483_647u64, F => F::characteristic());
/// assert_eq!(c, Some(2_147_483_647));
/// ```
#[macro_export]
macro_rules! with_prime_field {
    ($q:expr, $f:ident => $body:expr) => {{
        match $q {
            2 => {
                type $f = $crate::field::Fp<2>;
                Some($body)
            }
            3 => {
                type $f = $crate::field::Fp<3>;
                Some($body)
            }
            5 => {
                type $f = $crate::field::Fp<5>;
                Some($body)
            }
            7 => {
                type $f = $crate::field::Fp<7>;
                Some($body)
            }
            11 => {
                type $f = $crate::field::Fp<11>;
                Some($body)
            }
            13 => {
                type $f = $crate::field::Fp<13>;
                Some($body)
            }
            17 => {
                type $f = $crate::field::Fp<17>;
                Some($body)
            }
            19 => {
                type $f = $crate::field::Fp<19>;
                Some($body)
            }
            1_073_741_827 => {
                type $f = $crate::field::Fp<1_073_741_827>;
                Some($body)
            }
            1_073_741_831 => {
                type $f = $crate::field::Fp<1_073_741_831>;
                Some($body)
            }
            1_073_741_833 => {
                type $f = $crate::field::Fp<1_073_741_833>;
                Some($body)
            }
            1_073_741_839 => {
                type $f = $crate::field::Fp<1_073_741_839>;
                Some($body)
            }
            1_073_741_843 => {
                type $f = $crate::field::Fp<1_073_741_843>;
                Some($body)
            }
            2_147_483_647 => {
                type $f = $crate::field::Fp<2_147_483_647>;
                Some($body)
            }
            2_147_483_659 => {
                type $f = $crate::field::Fp<2_147_483_659>;
                Some($body)
            }
            4_294_967_291 => {
                type $f = $crate::field::Fp<4_294_967_291>;
                Some($body)
            }
            2_305_843_009_213_693_951 => {
                type $f = $crate::field::Fp<2_305_843_009_213_693_951>;
                Some($body)
            }
            _ => None,
        }
    }};
}
