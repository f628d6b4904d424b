//! Basis blades as generator bit masks and their product table.
//!
//! Bit `a` of a mask stands for the generator `E^a`; a blade is the product of
//! its generators in ascending index order. Products of two blades reduce to a
//! single blade times `±1` (or `0` in degenerate signatures, which are not
//! supported here).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Metric signature of a real Clifford algebra: `p` generators squaring to
/// `+1` followed by `q` generators squaring to `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub p: u8,
    pub q: u8,
}

impl Signature {
    /// The spacetime signature `(1, 3)`: `E^0` timelike, `E^1..E^3` spacelike.
    pub const SPACETIME: Signature = Signature { p: 1, q: 3 };

    pub fn new(p: u8, q: u8) -> Result<Self, Error> {
        if p as u32 + q as u32 > 8 {
            return Err(Error::SignatureTooLarge { p, q });
        }
        Ok(Signature { p, q })
    }

    pub const fn dim(self) -> usize {
        (self.p + self.q) as usize
    }

    /// Number of basis blades, `2^(p+q)`.
    pub const fn blade_count(self) -> usize {
        1 << self.dim()
    }

    /// Diagonal metric entry `η^{aa}`.
    pub const fn metric(self, a: usize) -> f64 {
        if a < self.p as usize {
            1.0
        } else {
            -1.0
        }
    }

    /// `η^{ab}`.
    pub fn eta(self, a: usize, b: usize) -> f64 {
        if a == b {
            self.metric(a)
        } else {
            0.0
        }
    }
}

/// A basis blade of the algebra, identified by its generator mask.
///
/// Serialised by its canonical name (`"1"`, `"e0"`, `"e12"`, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(pub u8);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    /// The single generator `E^a`.
    pub const fn generator(a: usize) -> Self {
        BladeIndex(1 << a)
    }

    pub const fn mask(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Generators making up the blade, ascending.
    pub fn generators(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..8).filter(move |a| mask & (1 << a) != 0)
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        for a in self.generators() {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BladeIndex {
    type Err = Error;

    /// Accepts canonical names only: generator indices strictly ascending.
    fn from_str(name: &str) -> Result<Self, Error> {
        if name == "1" {
            return Ok(BladeIndex::SCALAR);
        }
        let bad = || Error::BadBlade(name.to_string());
        let digits = name.strip_prefix('e').filter(|d| !d.is_empty()).ok_or_else(bad)?;
        let mut mask = 0u8;
        let mut last = None;
        for ch in digits.chars() {
            let a = ch.to_digit(10).filter(|&a| a < 8).ok_or_else(bad)?;
            if last.is_some_and(|l| l >= a) {
                return Err(bad());
            }
            last = Some(a);
            mask |= 1 << a;
        }
        Ok(BladeIndex(mask))
    }
}

impl Serialize for BladeIndex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BladeIndex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

/// Sign picked up when the generators of `i` and `j` are brought into
/// canonical order, before any metric contraction.
const fn reorder_sign(i: u8, j: u8) -> f64 {
    // Each generator of `j` has to move left past every generator of `i`
    // with a larger index.
    let mut swaps = 0u32;
    let mut rest = i >> 1;
    while rest != 0 {
        swaps += (rest & j).count_ones();
        rest >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

const fn metric_sign(common: u8, p: u8) -> f64 {
    let mut sign = 1.0;
    let mut a = 0;
    while a < 8 {
        if common & (1 << a) != 0 && a >= p {
            sign = -sign;
        }
        a += 1;
    }
    sign
}

/// Product of two basis blades: `E_i E_j = sign · E_k`.
pub const fn blade_mul(i: BladeIndex, j: BladeIndex, sig: Signature) -> (f64, BladeIndex) {
    let sign = reorder_sign(i.0, j.0) * metric_sign(i.0 & j.0, sig.p);
    (sign, BladeIndex(i.0 ^ j.0))
}

/// Precomputed product table for the 16 blades of `R_{1,3}`.
pub(crate) struct ProductTable {
    pub sign: [[f64; 16]; 16],
    pub target: [[u8; 16]; 16],
}

const fn build_spacetime_table() -> ProductTable {
    let mut sign = [[0.0; 16]; 16];
    let mut target = [[0u8; 16]; 16];
    let mut i = 0;
    while i < 16 {
        let mut j = 0;
        while j < 16 {
            let (s, k) = blade_mul(BladeIndex(i as u8), BladeIndex(j as u8), Signature::SPACETIME);
            sign[i][j] = s;
            target[i][j] = k.0;
            j += 1;
        }
        i += 1;
    }
    ProductTable { sign, target }
}

pub(crate) static SPACETIME_TABLE: ProductTable = build_spacetime_table();

/// Signs of the spacetime table as a constant; the target of `E_i E_j` is
/// always `i ^ j`.
pub(crate) const SPACETIME_SIGNS: [[f64; 16]; 16] = build_spacetime_table().sign;

/// All 16 blades of `R_{1,3}` in mask order.
pub fn spacetime_blades() -> impl Iterator<Item = BladeIndex> {
    (0u8..16).map(BladeIndex)
}

#[cfg(test)]
mod tests {

    #[test]
    fn canonical_names_round_trip() {
        for m in 0..16u8 {
            let b = BladeIndex(m);
            assert_eq!(b.to_string().parse::<BladeIndex>().unwrap(), b);
        }
        assert!("e21".parse::<BladeIndex>().is_err());
        assert!("e".parse::<BladeIndex>().is_err());
        assert!("x1".parse::<BladeIndex>().is_err());
    }
    use super::*;

    const E0: BladeIndex = BladeIndex::generator(0);
    const E1: BladeIndex = BladeIndex::generator(1);
    const SIG: Signature = Signature::SPACETIME;

    #[test]
    fn generator_squares_follow_metric() {
        assert_eq!(blade_mul(E0, E0, SIG), (1.0, BladeIndex::SCALAR));
        assert_eq!(blade_mul(E1, E1, SIG), (-1.0, BladeIndex::SCALAR));
        for a in 2..4 {
            let g = BladeIndex::generator(a);
            assert_eq!(blade_mul(g, g, SIG), (-1.0, BladeIndex::SCALAR));
        }
    }

    #[test]
    fn scalar_is_identity() {
        for x in spacetime_blades() {
            assert_eq!(blade_mul(BladeIndex::SCALAR, x, SIG), (1.0, x));
            assert_eq!(blade_mul(x, BladeIndex::SCALAR, SIG), (1.0, x));
        }
    }

    #[test]
    fn pseudoscalar_squares_to_minus_one() {
        let i = BladeIndex(0b1111);
        assert_eq!(blade_mul(i, i, SIG), (-1.0, BladeIndex::SCALAR));
    }

    #[test]
    fn distinct_generators_anticommute() {
        for a in 0..4 {
            for b in 0..4 {
                if a == b {
                    continue;
                }
                let (s1, k1) = blade_mul(BladeIndex::generator(a), BladeIndex::generator(b), SIG);
                let (s2, k2) = blade_mul(BladeIndex::generator(b), BladeIndex::generator(a), SIG);
                assert_eq!(k1, k2);
                assert_eq!(s1, -s2);
            }
        }
    }

    #[test]
    fn euclidean_signature_is_supported() {
        let sig = Signature::new(3, 0).unwrap();
        let e12 = BladeIndex(0b011);
        assert_eq!(blade_mul(e12, e12, sig), (-1.0, BladeIndex::SCALAR));
        assert_eq!(sig.blade_count(), 8);
        assert!(Signature::new(5, 4).is_err());
    }

    #[test]
    fn table_matches_direct_product() {
        for i in spacetime_blades() {
            for j in spacetime_blades() {
                let (s, k) = blade_mul(i, j, SIG);
                assert_eq!(SPACETIME_TABLE.sign[i.index()][j.index()], s);
                assert_eq!(SPACETIME_TABLE.target[i.index()][j.index()], k.0);
            }
        }
    }

    #[test]
    fn display_names() {
        assert_eq!(BladeIndex(0).to_string(), "1");
        assert_eq!(BladeIndex(0b0110).to_string(), "e12");
        assert_eq!(BladeIndex(0b1111).to_string(), "e0123");
    }
}
