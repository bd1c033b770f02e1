//! Table-driven arithmetic in GF(2^b), 3 <= b <= 16.
//!
//! Elements are stored in polynomial-basis form as integers `0..2^b`. The
//! generator `alpha` is always the element `x` (integer 2), and construction
//! fails unless `x` has multiplicative order exactly `2^b - 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Smallest and largest supported field widths.
pub const MIN_BITS: u32 = 3;
pub const MAX_BITS: u32 = 16;

/// A symbol of GF(2^b) in polynomial-basis representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Built-in primitive polynomial for each supported width.
///
/// b = 3 is `x^3 + x + 1` and b = 8 is `x^8 + x^4 + x^3 + x^2 + 1`.
pub fn default_poly(b: u32) -> Option<u32> {
    let poly = match b {
        3 => 0xB,
        4 => 0x13,
        5 => 0x25,
        6 => 0x43,
        7 => 0x89,
        8 => 0x11D,
        9 => 0x211,
        10 => 0x409,
        11 => 0x805,
        12 => 0x1053,
        13 => 0x201B,
        14 => 0x4443,
        15 => 0x8003,
        16 => 0x1100B,
        _ => return None,
    };
    Some(poly)
}

#[derive(Debug)]
struct Tables {
    bits: u32,
    poly: u32,
    order: u32,
    // exp has 2 * order entries so a sum of two logs indexes it directly.
    exp: Vec<u16>,
    // log[0] is unused.
    log: Vec<u16>,
}

/// An arithmetic context for GF(2^b). Cheap to clone; immutable after
/// construction and shareable across threads.
#[derive(Clone)]
pub struct FieldSpec {
    tables: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("bits", &self.tables.bits)
            .field("poly", &format_args!("{:#x}", self.tables.poly))
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.tables, &other.tables)
            || (self.tables.bits == other.tables.bits && self.tables.poly == other.tables.poly)
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds GF(2^b) modulo `poly`, checking that `x` generates the
    /// multiplicative group.
    pub fn new(b: u32, poly: u32) -> Result<Self> {
        if !(MIN_BITS..=MAX_BITS).contains(&b) {
            return Err(Error::UnsupportedWidth(b));
        }
        if poly >> b != 1 {
            return Err(Error::BadDegree { b, poly });
        }
        let size = 1u32 << b;
        let order = size - 1;
        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u16; size as usize];
        let mut seen = vec![false; size as usize];

        let mut x: u32 = 1;
        for i in 0..order {
            if x == 0 || seen[x as usize] {
                return Err(Error::NonPrimitivePolynomial {
                    poly,
                    order: i,
                    expected: order,
                });
            }
            seen[x as usize] = true;
            exp[i as usize] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & size != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::NonPrimitivePolynomial {
                poly,
                order: order + 1,
                expected: order,
            });
        }
        for i in order..2 * order {
            exp[i as usize] = exp[(i - order) as usize];
        }

        Ok(FieldSpec {
            tables: Arc::new(Tables {
                bits: b,
                poly,
                order,
                exp,
                log,
            }),
        })
    }

    /// GF(2^b) with the built-in polynomial for `b`.
    pub fn with_default_poly(b: u32) -> Result<Self> {
        let poly = default_poly(b).ok_or(Error::UnsupportedWidth(b))?;
        Self::new(b, poly)
    }

    /// GF(8) modulo `x^3 + x + 1`.
    pub fn gf8() -> Self {
        Self::new(3, 0xB).expect("x^3 + x + 1 is primitive")
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.tables.bits
    }

    #[inline]
    pub fn poly(&self) -> u32 {
        self.tables.poly
    }

    /// Number of field elements, `2^b`.
    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.tables.bits
    }

    /// Multiplicative order of alpha, `2^b - 1`.
    #[inline]
    pub fn order(&self) -> usize {
        self.tables.order as usize
    }

    #[inline]
    pub fn alpha(&self) -> FieldElement {
        FieldElement(2)
    }

    /// Checked conversion from an integer.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if (value as usize) < self.size() {
            Ok(FieldElement(value as u16))
        } else {
            Err(Error::NotAnElement {
                value,
                b: self.bits(),
            })
        }
    }

    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as usize) < self.size()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.tables;
        FieldElement(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivideByZero);
        }
        let t = &*self.tables;
        let l = t.log[a.0 as usize] as u32;
        Ok(FieldElement(t.exp[((t.order - l) % t.order) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent. Negative exponents reduce modulo the
    /// group order; `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::DivideByZero),
            };
        }
        let order = self.tables.order as i64;
        let l = self.tables.log[a.0 as usize] as i64;
        let k = (l * e.rem_euclid(order)).rem_euclid(order);
        Ok(FieldElement(self.tables.exp[k as usize]))
    }

    /// `alpha^k` for any integer `k`.
    #[inline]
    pub fn alpha_pow(&self, k: i64) -> FieldElement {
        let order = self.tables.order as i64;
        FieldElement(self.tables.exp[k.rem_euclid(order) as usize])
    }

    /// Discrete log base alpha, in `0..2^b - 1`. `None` for zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.tables.log[a.0 as usize] as u32)
        }
    }

    /// Iterates over all `2^b` elements in integer order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(|v| FieldElement(v as u16))
    }

    /// `Σ a_i · b_i`.
    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter().zip(b).fold(FieldElement::ZERO, |acc, (&x, &y)| {
            self.add(acc, self.mul(x, y))
        })
    }
}
