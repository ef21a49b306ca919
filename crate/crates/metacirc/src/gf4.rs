//! GF(4) arithmetic in the bit-pair encoding, plus the two inner products
//! used throughout: the trace form evaluated with genuine field arithmetic
//! and its bit-parallel symplectic reformulation. The two must always agree;
//! the slow path exists so the fast one can be checked against it.

use crate::bits::BitRow;
use crate::Error;

/// Element of GF(4) = {0, 1, w, W} with W = w^2 = w + 1. Encoded as the bit
/// pair (a, b) meaning a + w*b, so addition is XOR of pairs.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct GF4 {
    bits: u8, // bit 0 = a, bit 1 = b
}

impl GF4 {
    pub const ZERO: GF4 = GF4 { bits: 0b00 };
    pub const ONE: GF4 = GF4 { bits: 0b01 };
    pub const OMEGA: GF4 = GF4 { bits: 0b10 };
    pub const OMEGA_BAR: GF4 = GF4 { bits: 0b11 };

    pub const ALL: [GF4; 4] = [GF4::ZERO, GF4::ONE, GF4::OMEGA, GF4::OMEGA_BAR];

    pub fn new(a: bool, b: bool) -> GF4 {
        GF4 { bits: a as u8 | (b as u8) << 1 }
    }

    pub fn a(self) -> bool {
        self.bits & 1 == 1
    }

    pub fn b(self) -> bool {
        self.bits & 2 == 2
    }

    pub fn square(self) -> GF4 {
        gf4_mul(self, self)
    }

    /// Symbol used in generator matrix dumps: one of 0, 1, w, W.
    pub fn symbol(self) -> char {
        match self.bits {
            0b00 => '0',
            0b01 => '1',
            0b10 => 'w',
            _ => 'W',
        }
    }

    pub fn from_symbol(c: char) -> Option<GF4> {
        match c {
            '0' => Some(GF4::ZERO),
            '1' => Some(GF4::ONE),
            'w' => Some(GF4::OMEGA),
            'W' => Some(GF4::OMEGA_BAR),
            _ => None,
        }
    }
}

/// Field product under w^2 = w + 1:
/// (a + wb)(c + wd) = (ac + bd) + w(ad + bc + bd).
impl std::ops::Add for GF4 {
    type Output = GF4;

    /// Characteristic 2: addition is bitwise XOR of the (a, b) pair.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: GF4) -> GF4 {
        GF4 { bits: self.bits ^ rhs.bits }
    }
}

pub fn gf4_mul(x: GF4, y: GF4) -> GF4 {
    let (a, b) = (x.a(), x.b());
    let (c, d) = (y.a(), y.b());
    GF4::new((a & c) ^ (b & d), (a & d) ^ (b & c) ^ (b & d))
}

/// Vector over GF(4) stored as two parallel bit rows: `a` holds the
/// coefficient of 1 per coordinate, `b` the coefficient of w.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F4Vector {
    a: BitRow,
    b: BitRow,
}

impl F4Vector {
    pub fn zeros(len: usize) -> F4Vector {
        F4Vector { a: BitRow::zeros(len), b: BitRow::zeros(len) }
    }

    pub fn from_rows(a: BitRow, b: BitRow) -> F4Vector {
        assert_eq!(a.len(), b.len(), "a and b rows must have equal length");
        F4Vector { a, b }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn get(&self, i: usize) -> GF4 {
        GF4::new(self.a.get(i), self.b.get(i))
    }

    pub fn set(&mut self, i: usize, v: GF4) {
        self.a.set(i, v.a());
        self.b.set(i, v.b());
    }

    pub fn a_row(&self) -> &BitRow {
        &self.a
    }

    pub fn b_row(&self) -> &BitRow {
        &self.b
    }

    pub fn xor_assign(&mut self, other: &F4Vector) {
        self.a.xor_assign(&other.a);
        self.b.xor_assign(&other.b);
    }

    /// Hamming weight: number of nonzero coordinates = popcount(a | b).
    pub fn weight(&self) -> u32 {
        self.a.or_count(&self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn symbols(&self) -> String {
        (0..self.len()).map(|i| self.get(i).symbol()).collect()
    }
}

/// Sum over coordinates of x_j * y_j^2 + x_j^2 * y_j, evaluated with field
/// arithmetic. Each term lies in the subfield {0, 1}, so the sum does too.
pub fn trace_hermitian(x: &F4Vector, y: &F4Vector) -> Result<bool, Error> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let mut acc = GF4::ZERO;
    for j in 0..x.len() {
        let (xj, yj) = (x.get(j), y.get(j));
        let term = gf4_mul(xj, yj.square()) + gf4_mul(xj.square(), yj);
        debug_assert!(!term.b(), "per-coordinate trace term must lie in F2");
        acc = acc + term;
    }
    debug_assert!(!acc.b());
    Ok(acc.a())
}

/// Bit-parallel equivalent of `trace_hermitian`:
/// parity(x.a & y.b) XOR parity(x.b & y.a).
pub fn symplectic_form(x: &F4Vector, y: &F4Vector) -> Result<bool, Error> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    Ok(x.a_row().and_parity(y.b_row()) ^ x.b_row().and_parity(y.a_row()))
}
