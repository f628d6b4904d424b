//! Coordinate-dependent multivector fields with exact derivatives.
//!
//! Every field is a [`FieldExpr`] built from a small closed set of
//! constructors. Each constructor knows its analytic partial derivatives, so
//! covariant derivatives and Dirac residuals never rely on numerical
//! differentiation. Finite differences only appear as a cross-check.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::clifford::{exp_bivector, BladeIndex, Multivector};
use crate::error::Error;

/// Coordinates `(x^0, x^1, x^2, x^3)` in the chart.
pub type Point = [f64; 4];

/// Highest total degree accepted in a [`FieldExpr::Polynomial`].
pub const MAX_POLY_DEGREE: u32 = 3;

/// Value and the four coordinate partials of a field at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: Multivector,
    pub partials: [Multivector; 4],
}

impl Jet {
    pub fn constant(value: Multivector) -> Self {
        Jet { value, partials: [Multivector::ZERO; 4] }
    }

    /// Directional derivative `v^μ ∂_μ` for contravariant coordinate
    /// components `v`.
    pub fn directional(&self, v: &[f64; 4]) -> Multivector {
        let mut out = Multivector::ZERO;
        for (p, &vm) in self.partials.iter().zip(v) {
            if vm != 0.0 {
                out += *p * vm;
            }
        }
        out
    }

    /// Jet of the pointwise geometric product.
    pub fn product(&self, rhs: &Jet) -> Jet {
        Jet {
            value: self.value.gp(&rhs.value),
            partials: std::array::from_fn(|mu| self.partials[mu].gp(&rhs.value) + self.value.gp(&rhs.partials[mu])),
        }
    }
}

/// One term `coeff · x^powers · E_blade` of a polynomial field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub blade: BladeIndex,
    pub coeff: f64,
    #[serde(default)]
    pub powers: [u32; 4],
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.powers.iter().sum()
    }

    fn eval(&self, x: &Point) -> f64 {
        self.powers
            .iter()
            .zip(x)
            .fold(self.coeff, |acc, (&p, &xi)| acc * xi.powi(p as i32))
    }

    fn partial(&self, mu: usize) -> Option<Monomial> {
        let p = self.powers[mu];
        if p == 0 {
            return None;
        }
        let mut powers = self.powers;
        powers[mu] -= 1;
        Some(Monomial { blade: self.blade, coeff: self.coeff * p as f64, powers })
    }
}

/// Named scalar functions of the coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "fn")]
pub enum ScalarFn {
    /// `offset + slope · x`
    Linear { offset: f64, slope: [f64; 4] },
    /// `amplitude · sin(k · x + phase)`
    Sine {
        amplitude: f64,
        wavevector: [f64; 4],
        #[serde(default)]
        phase: f64,
    },
    /// `amplitude · exp(−|x − center|² / (2 width²))` with the Euclidean
    /// coordinate norm.
    Gaussian { amplitude: f64, center: [f64; 4], width: f64 },
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

impl ScalarFn {
    pub fn eval(&self, x: &Point) -> f64 {
        match self {
            ScalarFn::Linear { offset, slope } => offset + dot(slope, x),
            ScalarFn::Sine { amplitude, wavevector, phase } => amplitude * (dot(wavevector, x) + phase).sin(),
            ScalarFn::Gaussian { amplitude, center, width } => {
                let r2: f64 = x.iter().zip(center).map(|(a, c)| (a - c) * (a - c)).sum();
                amplitude * (-r2 / (2.0 * width * width)).exp()
            }
        }
    }

    fn gradient(&self, x: &Point) -> [f64; 4] {
        match self {
            ScalarFn::Linear { slope, .. } => *slope,
            ScalarFn::Sine { amplitude, wavevector, phase } => {
                let c = amplitude * (dot(wavevector, x) + phase).cos();
                wavevector.map(|k| c * k)
            }
            ScalarFn::Gaussian { width, center, .. } => {
                let g = self.eval(x);
                let w2 = width * width;
                std::array::from_fn(|mu| -g * (x[mu] - center[mu]) / w2)
            }
        }
    }

    fn partial(&self, mu: usize) -> FieldExpr {
        match self {
            ScalarFn::Linear { slope, .. } => FieldExpr::scalar(slope[mu]),
            ScalarFn::Sine { amplitude, wavevector, phase } => FieldExpr::Scalar(ScalarFn::Sine {
                amplitude: amplitude * wavevector[mu],
                wavevector: *wavevector,
                phase: phase + FRAC_PI_2,
            }),
            ScalarFn::Gaussian { width, center, .. } => {
                let w2 = width * width;
                let linear = FieldExpr::Scalar(ScalarFn::Linear {
                    offset: center[mu] / w2,
                    slope: std::array::from_fn(|nu| if nu == mu { -1.0 / w2 } else { 0.0 }),
                });
                FieldExpr::product(linear, FieldExpr::Scalar(self.clone()))
            }
        }
    }
}

/// A multivector-valued function of the coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldExpr {
    Constant(Multivector),
    /// Sum of monomials, total degree at most [`MAX_POLY_DEGREE`].
    Polynomial(Vec<Monomial>),
    /// `amplitude · exp(bivector · (k · x))`
    RotorWave {
        bivector: Multivector,
        wavevector: [f64; 4],
        amplitude: Multivector,
    },
    /// `exp(bivector · s(x))` for a scalar field `s`.
    Exp { bivector: Multivector, phase: Box<FieldExpr> },
    Scalar(ScalarFn),
    Sum(Vec<FieldExpr>),
    Product(Box<FieldExpr>, Box<FieldExpr>),
}

impl Default for FieldExpr {
    fn default() -> Self {
        FieldExpr::zero()
    }
}

fn exp_or_nan(b: &Multivector) -> Multivector {
    exp_bivector(b).unwrap_or(Multivector::new([f64::NAN; 16]))
}

impl FieldExpr {
    pub fn zero() -> Self {
        FieldExpr::Constant(Multivector::ZERO)
    }

    pub fn constant(m: Multivector) -> Self {
        FieldExpr::Constant(m)
    }

    pub fn scalar(s: f64) -> Self {
        FieldExpr::Constant(Multivector::scalar(s))
    }

    pub fn product(a: FieldExpr, b: FieldExpr) -> Self {
        FieldExpr::Product(Box::new(a), Box::new(b))
    }

    /// `exp(bivector · s(x))`.
    pub fn exp(bivector: Multivector, phase: FieldExpr) -> Self {
        FieldExpr::Exp { bivector, phase: Box::new(phase) }
    }

    pub fn rotor_wave(bivector: Multivector, wavevector: [f64; 4], amplitude: Multivector) -> Self {
        FieldExpr::RotorWave { bivector, wavevector, amplitude }
    }

    pub fn is_zero_constant(&self) -> bool {
        matches!(self, FieldExpr::Constant(m) if *m == Multivector::ZERO)
    }

    /// Checks the structural constraints of the constructor set.
    pub fn validate(&self) -> Result<(), Error> {
        match self {
            FieldExpr::Constant(_) | FieldExpr::Scalar(ScalarFn::Linear { .. }) | FieldExpr::Scalar(ScalarFn::Sine { .. }) => Ok(()),
            FieldExpr::Scalar(ScalarFn::Gaussian { width, .. }) => {
                if *width > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidField(format!("gaussian width must be positive, got {width}")))
                }
            }
            FieldExpr::Polynomial(terms) => match terms.iter().find(|t| t.degree() > MAX_POLY_DEGREE) {
                Some(t) => Err(Error::InvalidField(format!("monomial degree {} exceeds {MAX_POLY_DEGREE}", t.degree()))),
                None => Ok(()),
            },
            FieldExpr::RotorWave { bivector, .. } | FieldExpr::Exp { bivector, .. } => {
                if (*bivector - bivector.grade_proj(2)).sup_norm() > 0.0 {
                    return Err(Error::InvalidField("rotor generator must be a bivector".into()));
                }
                if let FieldExpr::Exp { phase, .. } = self {
                    phase.validate()?;
                }
                Ok(())
            }
            FieldExpr::Sum(terms) => terms.iter().try_for_each(FieldExpr::validate),
            FieldExpr::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    pub fn eval(&self, x: &Point) -> Multivector {
        match self {
            FieldExpr::Constant(m) => *m,
            FieldExpr::Polynomial(terms) => {
                let mut out = Multivector::ZERO;
                for t in terms {
                    out.coeffs[t.blade.index()] += t.eval(x);
                }
                out
            }
            FieldExpr::RotorWave { bivector, wavevector, amplitude } => {
                amplitude.gp(&exp_or_nan(&(*bivector * dot(wavevector, x))))
            }
            FieldExpr::Exp { bivector, phase } => exp_or_nan(&(*bivector * phase.eval(x).scalar_part())),
            FieldExpr::Scalar(f) => Multivector::scalar(f.eval(x)),
            FieldExpr::Sum(terms) => terms.iter().map(|t| t.eval(x)).sum(),
            FieldExpr::Product(a, b) => a.eval(x).gp(&b.eval(x)),
        }
    }

    /// Value and exact coordinate partials at `x`.
    pub fn jet(&self, x: &Point) -> Jet {
        match self {
            FieldExpr::Constant(m) => Jet::constant(*m),
            FieldExpr::Polynomial(terms) => {
                let mut jet = Jet::constant(Multivector::ZERO);
                for t in terms {
                    let k = t.blade.index();
                    jet.value.coeffs[k] += t.eval(x);
                    for mu in 0..4 {
                        if let Some(d) = t.partial(mu) {
                            jet.partials[mu].coeffs[k] += d.eval(x);
                        }
                    }
                }
                jet
            }
            FieldExpr::RotorWave { bivector, wavevector, amplitude } => {
                let value = amplitude.gp(&exp_or_nan(&(*bivector * dot(wavevector, x))));
                // The generator commutes with its own exponential.
                let base = amplitude.gp(bivector).gp(&exp_or_nan(&(*bivector * dot(wavevector, x))));
                Jet { value, partials: wavevector.map(|k| base * k) }
            }
            FieldExpr::Exp { bivector, phase } => {
                let s = phase.jet(x);
                let value = exp_or_nan(&(*bivector * s.value.scalar_part()));
                let base = bivector.gp(&value);
                Jet { value, partials: std::array::from_fn(|mu| base * s.partials[mu].scalar_part()) }
            }
            FieldExpr::Scalar(f) => {
                let g = f.gradient(x);
                Jet { value: Multivector::scalar(f.eval(x)), partials: g.map(Multivector::scalar) }
            }
            FieldExpr::Sum(terms) => {
                let mut jet = Jet::constant(Multivector::ZERO);
                for t in terms {
                    let j = t.jet(x);
                    jet.value += j.value;
                    for mu in 0..4 {
                        jet.partials[mu] += j.partials[mu];
                    }
                }
                jet
            }
            FieldExpr::Product(a, b) => a.jet(x).product(&b.jet(x)),
        }
    }

    /// Symbolic partial derivative `∂_μ` as a new expression.
    pub fn partial(&self, mu: usize) -> FieldExpr {
        match self {
            FieldExpr::Constant(_) => FieldExpr::zero(),
            FieldExpr::Polynomial(terms) => {
                let d: Vec<Monomial> = terms.iter().filter_map(|t| t.partial(mu)).collect();
                if d.is_empty() {
                    FieldExpr::zero()
                } else {
                    FieldExpr::Polynomial(d)
                }
            }
            FieldExpr::RotorWave { bivector, wavevector, amplitude } => {
                if wavevector[mu] == 0.0 {
                    return FieldExpr::zero();
                }
                FieldExpr::RotorWave {
                    bivector: *bivector,
                    wavevector: *wavevector,
                    amplitude: amplitude.gp(bivector) * wavevector[mu],
                }
            }
            FieldExpr::Exp { bivector, phase } => {
                let dphase = phase.partial(mu);
                if dphase.is_zero_constant() {
                    return FieldExpr::zero();
                }
                FieldExpr::product(FieldExpr::product(FieldExpr::Constant(*bivector), dphase), self.clone())
            }
            FieldExpr::Scalar(f) => f.partial(mu),
            FieldExpr::Sum(terms) => {
                let d: Vec<FieldExpr> = terms.iter().map(|t| t.partial(mu)).filter(|t| !t.is_zero_constant()).collect();
                match d.len() {
                    0 => FieldExpr::zero(),
                    1 => d.into_iter().next().unwrap_or_default(),
                    _ => FieldExpr::Sum(d),
                }
            }
            FieldExpr::Product(a, b) => {
                let da = a.partial(mu);
                let db = b.partial(mu);
                let mut terms = Vec::new();
                if !da.is_zero_constant() {
                    terms.push(FieldExpr::product(da, (**b).clone()));
                }
                if !db.is_zero_constant() {
                    terms.push(FieldExpr::product((**a).clone(), db));
                }
                match terms.len() {
                    0 => FieldExpr::zero(),
                    1 => terms.pop().unwrap_or_default(),
                    _ => FieldExpr::Sum(terms),
                }
            }
        }
    }

    /// Coordinate gradient `E^μ ∂_μ s` of the scalar part.
    pub fn gradient(&self) -> FieldExpr {
        let terms: Vec<FieldExpr> = (0..4)
            .map(|mu| (mu, self.partial(mu)))
            .filter(|(_, d)| !d.is_zero_constant())
            .map(|(mu, d)| FieldExpr::product(FieldExpr::Constant(Multivector::basis_vector(mu)), d))
            .collect();
        if terms.is_empty() {
            FieldExpr::zero()
        } else {
            FieldExpr::Sum(terms)
        }
    }

    /// Pointwise reversion, as an expression.
    pub fn reverse(&self) -> FieldExpr {
        match self {
            FieldExpr::Constant(m) => FieldExpr::Constant(m.reverse()),
            FieldExpr::Polynomial(terms) => FieldExpr::Polynomial(
                terms
                    .iter()
                    .map(|t| {
                        let sign = Multivector::blade(t.blade, 1.0).reverse().get(t.blade);
                        Monomial { coeff: t.coeff * sign, ..*t }
                    })
                    .collect(),
            ),
            FieldExpr::RotorWave { bivector, wavevector, amplitude } => FieldExpr::product(
                FieldExpr::RotorWave { bivector: -*bivector, wavevector: *wavevector, amplitude: Multivector::ONE },
                FieldExpr::Constant(amplitude.reverse()),
            ),
            FieldExpr::Exp { bivector, phase } => FieldExpr::Exp { bivector: -*bivector, phase: phase.clone() },
            FieldExpr::Scalar(f) => FieldExpr::Scalar(f.clone()),
            FieldExpr::Sum(terms) => FieldExpr::Sum(terms.iter().map(FieldExpr::reverse).collect()),
            FieldExpr::Product(a, b) => FieldExpr::product(b.reverse(), a.reverse()),
        }
    }

    /// Largest odd coefficient over the given points.
    pub fn max_odd_part<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> f64 {
        points
            .into_iter()
            .map(|x| self.eval(x).odd_part().sup_norm())
            .fold(0.0, f64::max)
    }
}

impl Add for FieldExpr {
    type Output = FieldExpr;
    fn add(self, rhs: FieldExpr) -> FieldExpr {
        match self {
            FieldExpr::Sum(mut terms) => {
                terms.push(rhs);
                FieldExpr::Sum(terms)
            }
            other => FieldExpr::Sum(vec![other, rhs]),
        }
    }
}

impl Sub for FieldExpr {
    type Output = FieldExpr;
    fn sub(self, rhs: FieldExpr) -> FieldExpr {
        self + -rhs
    }
}

impl Neg for FieldExpr {
    type Output = FieldExpr;
    fn neg(self) -> FieldExpr {
        match self {
            FieldExpr::Constant(m) => FieldExpr::Constant(-m),
            other => FieldExpr::product(FieldExpr::scalar(-1.0), other),
        }
    }
}

impl Mul for FieldExpr {
    type Output = FieldExpr;
    fn mul(self, rhs: FieldExpr) -> FieldExpr {
        FieldExpr::product(self, rhs)
    }
}

/// The four kinds of section a field can represent. They share a component
/// representation in the fixed trivialization but transform differently when
/// the spin frame changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    /// Section of the Clifford bundle; components `a ↦ ũ a u`.
    Clifford,
    /// Section of the left spin-Clifford bundle; `a ↦ ũ a`.
    LeftSpinor,
    /// Section of the right spin-Clifford bundle; `a ↦ a u`.
    RightSpinor,
    /// Frame-independent algebra-valued function.
    Invariant,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Clifford => "clifford",
            FieldKind::LeftSpinor => "left-spinor",
            FieldKind::RightSpinor => "right-spinor",
            FieldKind::Invariant => "invariant",
        }
    }

    /// Kind of the product `self · rhs`, if that product is defined.
    pub fn product(self, rhs: FieldKind) -> Result<FieldKind, Error> {
        use FieldKind::*;
        match (self, rhs) {
            (Clifford, Clifford) => Ok(Clifford),
            (Clifford, LeftSpinor) => Ok(LeftSpinor),
            (RightSpinor, Clifford) => Ok(RightSpinor),
            (LeftSpinor, RightSpinor) => Ok(Clifford),
            (RightSpinor, LeftSpinor) => Ok(Invariant),
            (LeftSpinor, Invariant) => Ok(LeftSpinor),
            (Invariant, RightSpinor) => Ok(RightSpinor),
            (Invariant, Invariant) => Ok(Invariant),
            (l, r) => Err(Error::KindMismatch { left: l.name(), right: r.name() }),
        }
    }

    /// Components of a section of this kind after the spin frame is changed
    /// by the rotor field `u`.
    pub fn transform(self, components: &FieldExpr, u: &FieldExpr) -> FieldExpr {
        match self {
            FieldKind::Clifford => FieldExpr::product(FieldExpr::product(u.reverse(), components.clone()), u.clone()),
            FieldKind::LeftSpinor => FieldExpr::product(u.reverse(), components.clone()),
            FieldKind::RightSpinor => FieldExpr::product(components.clone(), u.clone()),
            FieldKind::Invariant => components.clone(),
        }
    }

    /// Pointwise version of [`FieldKind::transform`].
    pub fn transform_value(self, a: &Multivector, u: &Multivector) -> Multivector {
        match self {
            FieldKind::Clifford => u.reverse().gp(a).gp(u),
            FieldKind::LeftSpinor => u.reverse().gp(a),
            FieldKind::RightSpinor => a.gp(u),
            FieldKind::Invariant => *a,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A section whose kind is only known at run time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub kind: FieldKind,
    pub expr: FieldExpr,
}

impl Section {
    pub fn new(kind: FieldKind, expr: FieldExpr) -> Self {
        Section { kind, expr }
    }

    /// Kind-checked product.
    pub fn multiply(&self, rhs: &Section) -> Result<Section, Error> {
        let kind = self.kind.product(rhs.kind)?;
        Ok(Section { kind, expr: FieldExpr::product(self.expr.clone(), rhs.expr.clone()) })
    }

    pub fn change_frame(&self, u: &FieldExpr) -> Section {
        Section { kind: self.kind, expr: self.kind.transform(&self.expr, u) }
    }
}

/// Compile-time marker for a section kind.
pub trait Kind: Clone + fmt::Debug {
    const KIND: FieldKind;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliffordKind;
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeftKind;
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RightKind;
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantKind;

impl Kind for CliffordKind {
    const KIND: FieldKind = FieldKind::Clifford;
}
impl Kind for LeftKind {
    const KIND: FieldKind = FieldKind::LeftSpinor;
}
impl Kind for RightKind {
    const KIND: FieldKind = FieldKind::RightSpinor;
}
impl Kind for InvariantKind {
    const KIND: FieldKind = FieldKind::Invariant;
}

/// A field whose section kind is fixed by its type.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<K: Kind> {
    expr: FieldExpr,
    _kind: PhantomData<K>,
}

pub type CliffordField = Field<CliffordKind>;
pub type LeftSpinorField = Field<LeftKind>;
pub type RightSpinorField = Field<RightKind>;
pub type InvariantField = Field<InvariantKind>;

impl<K: Kind> Field<K> {
    pub fn new(expr: FieldExpr) -> Self {
        Field { expr, _kind: PhantomData }
    }

    pub fn constant(m: Multivector) -> Self {
        Self::new(FieldExpr::Constant(m))
    }

    /// The unit section of this kind in the fixed spin frame.
    pub fn unit() -> Self {
        Self::constant(Multivector::ONE)
    }

    pub fn expr(&self) -> &FieldExpr {
        &self.expr
    }

    pub fn into_expr(self) -> FieldExpr {
        self.expr
    }

    pub fn kind(&self) -> FieldKind {
        K::KIND
    }

    pub fn eval(&self, x: &Point) -> Multivector {
        self.expr.eval(x)
    }

    pub fn jet(&self, x: &Point) -> Jet {
        self.expr.jet(x)
    }

    pub fn to_section(&self) -> Section {
        Section::new(K::KIND, self.expr.clone())
    }

    /// Components after changing the spin frame by the rotor field `u`.
    pub fn change_frame(&self, u: &FieldExpr) -> Self {
        Self::new(K::KIND.transform(&self.expr, u))
    }

    fn product_with<R: Kind, O: Kind>(&self, rhs: &Field<R>) -> Field<O> {
        debug_assert_eq!(K::KIND.product(R::KIND).ok(), Some(O::KIND));
        Field::new(FieldExpr::product(self.expr.clone(), rhs.expr.clone()))
    }
}

impl<K: Kind> Add for Field<K> {
    type Output = Field<K>;
    fn add(self, rhs: Field<K>) -> Field<K> {
        Field::new(self.expr + rhs.expr)
    }
}

macro_rules! kind_product {
    ($lhs:ty, $rhs:ty => $out:ty) => {
        impl Mul<&Field<$rhs>> for &Field<$lhs> {
            type Output = Field<$out>;
            fn mul(self, rhs: &Field<$rhs>) -> Field<$out> {
                self.product_with(rhs)
            }
        }
    };
}

kind_product!(CliffordKind, CliffordKind => CliffordKind);
kind_product!(CliffordKind, LeftKind => LeftKind);
kind_product!(RightKind, CliffordKind => RightKind);
kind_product!(LeftKind, RightKind => CliffordKind);
kind_product!(RightKind, LeftKind => InvariantKind);
kind_product!(LeftKind, InvariantKind => LeftKind);
kind_product!(InvariantKind, RightKind => RightKind);
kind_product!(InvariantKind, InvariantKind => InvariantKind);

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize) -> Multivector {
        Multivector::basis_vector(a)
    }

    fn sample_fields() -> Vec<FieldExpr> {
        let poly = FieldExpr::Polynomial(vec![
            Monomial { blade: BladeIndex(0), coeff: 0.5, powers: [1, 0, 2, 0] },
            Monomial { blade: BladeIndex(0b0110), coeff: -0.3, powers: [0, 1, 1, 1] },
            Monomial { blade: BladeIndex(0b0001), coeff: 0.2, powers: [0, 0, 0, 2] },
        ]);
        let wave = FieldExpr::rotor_wave(
            Multivector::spin_plane() * 0.7 + e(1) * e(0) * 0.3,
            [1.0, -0.5, 0.25, 0.3],
            Multivector::ONE + e(2) * e(3) * 0.4,
        );
        let sine = FieldExpr::Scalar(ScalarFn::Sine { amplitude: 0.8, wavevector: [0.3, 1.1, -0.7, 0.2], phase: 0.4 });
        let gauss = FieldExpr::Scalar(ScalarFn::Gaussian { amplitude: 1.2, center: [0.1, -0.2, 0.3, 0.0], width: 0.9 });
        let exp = FieldExpr::exp(Multivector::spin_plane(), sine.clone());
        let linear = FieldExpr::Scalar(ScalarFn::Linear { offset: 0.2, slope: [0.1, 0.2, -0.3, 0.4] });
        vec![
            poly.clone(),
            wave.clone(),
            sine.clone(),
            gauss.clone(),
            exp.clone(),
            poly.clone() * wave.clone() + gauss * FieldExpr::constant(e(1)),
            exp * poly + linear * wave,
        ]
    }

    const X: Point = [0.3, -0.4, 0.2, 0.5];

    fn central_difference(f: &FieldExpr, x: &Point, mu: usize, h: f64) -> Multivector {
        let mut plus = *x;
        let mut minus = *x;
        plus[mu] += h;
        minus[mu] -= h;
        (f.eval(&plus) - f.eval(&minus)) * (0.5 / h)
    }

    #[test]
    fn jet_value_matches_eval() {
        for f in sample_fields() {
            assert!((f.jet(&X).value - f.eval(&X)).sup_norm() < 1e-14);
        }
    }

    #[test]
    fn finite_differences_converge_at_second_order() {
        for (k, f) in sample_fields().iter().enumerate() {
            let jet = f.jet(&X);
            for mu in 0..4 {
                let err = |h: f64| (central_difference(f, &X, mu, h) - jet.partials[mu]).sup_norm();
                let (coarse, fine) = (err(1e-2), err(5e-3));
                if coarse < 1e-11 {
                    continue;
                }
                assert!(coarse / fine >= 3.5, "field {k} direction {mu}: {coarse:e} -> {fine:e}");
            }
        }
    }

    #[test]
    fn symbolic_partial_matches_jet() {
        for f in sample_fields() {
            let jet = f.jet(&X);
            for mu in 0..4 {
                let d = f.partial(mu).eval(&X);
                assert!((d - jet.partials[mu]).sup_norm() < 1e-13);
            }
        }
    }

    #[test]
    fn reverse_expression_matches_pointwise_reverse() {
        for f in sample_fields() {
            let r = f.reverse();
            assert!((r.eval(&X) - f.eval(&X).reverse()).sup_norm() < 1e-14);
        }
    }

    #[test]
    fn gradient_of_linear_is_constant_vector() {
        let f = FieldExpr::Scalar(ScalarFn::Linear { offset: 1.0, slope: [1.0, 2.0, 3.0, 4.0] });
        let g = f.gradient().eval(&X);
        assert_eq!(g, Multivector::vector_from_covariant([1.0, 2.0, 3.0, 4.0]));
    }

    #[test]
    fn validate_rejects_high_degree_and_non_bivector_generators() {
        let p = FieldExpr::Polynomial(vec![Monomial { blade: BladeIndex(0), coeff: 1.0, powers: [2, 2, 0, 0] }]);
        assert!(p.validate().is_err());
        let w = FieldExpr::rotor_wave(e(1), [1.0; 4], Multivector::ONE);
        assert!(w.validate().is_err());
        for f in sample_fields() {
            f.validate().unwrap();
        }
    }

    #[test]
    fn kind_products_follow_the_pairing_table() {
        use FieldKind::*;
        assert_eq!(LeftSpinor.product(RightSpinor), Ok(Clifford));
        assert_eq!(RightSpinor.product(LeftSpinor), Ok(Invariant));
        assert_eq!(Clifford.product(LeftSpinor), Ok(LeftSpinor));
        assert!(matches!(LeftSpinor.product(LeftSpinor), Err(Error::KindMismatch { .. })));
        assert!(LeftSpinor.product(Clifford).is_err());
        assert!(Clifford.product(RightSpinor).is_err());
    }

    #[test]
    fn unit_sections_pair_to_one() {
        let one_l = LeftSpinorField::unit();
        let one_r = RightSpinorField::unit();
        assert_eq!((&one_l * &one_r).eval(&X), Multivector::ONE);
        let leg = CliffordField::constant(Multivector::lower_basis_vector(2));
        let scalar = &(&one_r * &leg) * &one_l;
        assert_eq!(scalar.kind(), FieldKind::Invariant);
        assert_eq!(scalar.eval(&X), Multivector::lower_basis_vector(2));
    }

    #[test]
    fn serde_round_trip_of_expression() {
        let f = &sample_fields()[6];
        let text = serde_json::to_string(f).unwrap();
        let back: FieldExpr = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, f);
    }
}
