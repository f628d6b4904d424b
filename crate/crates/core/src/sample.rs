//! Seeded random generators for multivectors, smooth fields, rotor fields
//! and setups. Used by the property tests and the verification suites.

use rand::Rng;

use crate::clifford::{exp_bivector, BladeIndex, Multivector, BLADES};
use crate::field::{FieldExpr, Monomial, ScalarFn};
use crate::spacetime::{Chart, CoefficientTable, Connection, FrameField, Setup};

fn uniform<R: Rng>(rng: &mut R, scale: f64) -> f64 {
    rng.gen_range(-scale..=scale)
}

/// Every coefficient uniform in `[-1, 1]`.
pub fn multivector<R: Rng>(rng: &mut R) -> Multivector {
    Multivector::new(std::array::from_fn(|_| uniform(rng, 1.0)))
}

pub fn even<R: Rng>(rng: &mut R) -> Multivector {
    multivector(rng).even_part()
}

pub fn vector<R: Rng>(rng: &mut R) -> Multivector {
    multivector(rng).grade_proj(1)
}

pub fn bivector<R: Rng>(rng: &mut R) -> Multivector {
    multivector(rng).grade_proj(2)
}

/// A bivector of the form `a ∧ b`.
pub fn simple_bivector<R: Rng>(rng: &mut R) -> Multivector {
    Multivector::wedge_vectors(&vector(rng), &vector(rng))
}

/// `exp(B)` for a random bivector `B` with coefficients in `[-scale, scale]`.
pub fn rotor<R: Rng>(rng: &mut R, scale: f64) -> Multivector {
    exp_bivector(&(bivector(rng) * scale)).expect("finite bivector")
}

fn wavevector<R: Rng>(rng: &mut R, scale: f64) -> [f64; 4] {
    std::array::from_fn(|_| uniform(rng, scale))
}

/// A smooth scalar field of order one on the unit box.
pub fn scalar_field<R: Rng>(rng: &mut R) -> FieldExpr {
    match rng.gen_range(0..3) {
        0 => FieldExpr::Scalar(ScalarFn::Linear { offset: uniform(rng, 1.0), slope: wavevector(rng, 1.0) }),
        1 => FieldExpr::Scalar(ScalarFn::Sine {
            amplitude: uniform(rng, 1.0),
            wavevector: wavevector(rng, 1.5),
            phase: uniform(rng, 3.0),
        }),
        _ => FieldExpr::Scalar(ScalarFn::Gaussian {
            amplitude: uniform(rng, 1.0),
            center: wavevector(rng, 0.5),
            width: rng.gen_range(0.7..1.5),
        }),
    }
}

fn polynomial<R: Rng>(rng: &mut R, blades: &[usize]) -> FieldExpr {
    let terms = (0..4)
        .map(|_| {
            let mut powers = [0u32; 4];
            for _ in 0..rng.gen_range(0..=2) {
                powers[rng.gen_range(0..4)] += 1;
            }
            Monomial { blade: BladeIndex(blades[rng.gen_range(0..blades.len())] as u8), coeff: uniform(rng, 1.0), powers }
        })
        .collect();
    FieldExpr::Polynomial(terms)
}

/// A smooth field mixing every constructor; `even` restricts it to the even
/// subalgebra.
pub fn field<R: Rng>(rng: &mut R, even_only: bool) -> FieldExpr {
    let blades: Vec<usize> = (0..BLADES).filter(|&i| !even_only || (i as u32).count_ones() % 2 == 0).collect();
    let pick = |rng: &mut R| if even_only { even(rng) } else { multivector(rng) };
    let poly = polynomial(rng, &blades);
    let amplitude = pick(rng);
    let wave = FieldExpr::rotor_wave(bivector(rng) * 0.8, wavevector(rng, 1.0), amplitude);
    let scaled = FieldExpr::product(scalar_field(rng), FieldExpr::constant(pick(rng)));
    poly + wave + scaled
}

/// A smooth grade-1 field.
pub fn vector_field<R: Rng>(rng: &mut R) -> FieldExpr {
    let poly = polynomial(rng, &[1, 2, 4, 8]);
    poly + FieldExpr::product(scalar_field(rng), FieldExpr::constant(vector(rng)))
}

/// A position-dependent rotor field `u₀ exp(B (k·x)) exp(B' s(x))`.
pub fn rotor_field<R: Rng>(rng: &mut R) -> FieldExpr {
    let wave = FieldExpr::rotor_wave(bivector(rng) * 0.6, wavevector(rng, 1.0), rotor(rng, 0.5));
    let bent = FieldExpr::exp(bivector(rng) * 0.5, scalar_field(rng));
    FieldExpr::product(wave, bent)
}

/// Random antisymmetric coefficient table with constant, linear and
/// oscillating entries.
pub fn coefficient_table<R: Rng>(rng: &mut R) -> CoefficientTable {
    let mut entries = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in (b + 1)..4 {
                let expr = match rng.gen_range(0..3) {
                    0 => FieldExpr::scalar(uniform(rng, 1.0)),
                    _ => scalar_field(rng),
                };
                entries.push((a, b, c, expr));
            }
        }
    }
    CoefficientTable::from_entries(entries).expect("indices in range")
}

/// Riemann-Cartan setup: random frame rotor and random antisymmetric
/// connection coefficients.
pub fn riemann_cartan_setup<R: Rng>(rng: &mut R, chart: &Chart) -> Setup {
    let frame = FrameField { rotor: Some(rotor_field(rng)) };
    Setup::new(chart.clone(), frame, Connection::Coefficients(coefficient_table(rng))).expect("valid random setup")
}

/// Minkowski spacetime seen from a random position-dependent spin frame.
pub fn lorentzian_setup<R: Rng>(rng: &mut R, chart: &Chart) -> Setup {
    Setup::minkowski(chart.clone()).change_spin_frame(&rotor_field(rng)).expect("rotor field")
}
