//! Single ur-object: a two-component complex state vector and the symmetry
//! group that preserves its unitary norm.
//!
//! The group has three kinds of elements: exact SU(2) matrices, unit phases,
//! and the antilinear transformation K that conjugates the components and
//! then applies `i * sigma_2` (convention: sigma_2 rows `(0, -i)`, `(i, 0)`).
//! Invalid elements are unrepresentable: the constructors validate the
//! defining invariants exactly and the inner data stays private.

use num_rational::BigRational;

use crate::scalar::GaussianRational;

/// Two-component complex state vector of a single ur-object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrState {
    pub u1: GaussianRational,
    pub u2: GaussianRational,
}

impl UrState {
    pub fn new(u1: GaussianRational, u2: GaussianRational) -> Self {
        UrState { u1, u2 }
    }

    /// Componentwise scalar multiple.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        UrState { u1: c * &self.u1, u2: c * &self.u2 }
    }

    pub fn neg(&self) -> Self {
        UrState { u1: -self.u1.clone(), u2: -self.u2.clone() }
    }
}

/// Exact unitary norm `|u1|^2 + |u2|^2`.
pub fn ur_norm(u: &UrState) -> BigRational {
    u.u1.norm_sqr() + u.u2.norm_sqr()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UrError {
    #[error("matrix is not special unitary: {0}")]
    NotSpecialUnitary(String),
    #[error("phase is not unit modulus: |{0}|^2 != 1")]
    NotUnitPhase(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    /// Row-major 2x2 special unitary matrix.
    Unitary([[GaussianRational; 2]; 2]),
    Phase(GaussianRational),
    AntilinearK,
}

/// Validated element of the ur symmetry group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrGroupElement {
    kind: Kind,
}

impl UrGroupElement {
    /// Exact SU(2) element from a row-major matrix; rejects anything whose
    /// columns are not orthonormal or whose determinant is not 1.
    pub fn unitary(matrix: [[GaussianRational; 2]; 2]) -> Result<Self, UrError> {
        let [[a, b], [c, d]] = &matrix;
        let one = BigRational::from_integer(1.into());
        if a.norm_sqr() + c.norm_sqr() != one {
            return Err(UrError::NotSpecialUnitary("first column is not unit norm".into()));
        }
        if b.norm_sqr() + d.norm_sqr() != one {
            return Err(UrError::NotSpecialUnitary("second column is not unit norm".into()));
        }
        let overlap = &(&a.conj() * b) + &(&c.conj() * d);
        if !overlap.is_zero() {
            return Err(UrError::NotSpecialUnitary(format!(
                "columns are not orthogonal: overlap {overlap}"
            )));
        }
        let det = &(a * d) - &(b * c);
        if det != GaussianRational::one() {
            return Err(UrError::NotSpecialUnitary(format!("determinant {det} != 1")));
        }
        Ok(UrGroupElement { kind: Kind::Unitary(matrix) })
    }

    /// Unit phase element; rejects scalars off the unit circle.
    pub fn phase(value: GaussianRational) -> Result<Self, UrError> {
        if value.norm_sqr() != BigRational::from_integer(1.into()) {
            return Err(UrError::NotUnitPhase(value.to_string()));
        }
        Ok(UrGroupElement { kind: Kind::Phase(value) })
    }

    /// The antilinear transformation K.
    pub fn antilinear_k() -> Self {
        UrGroupElement { kind: Kind::AntilinearK }
    }

    pub fn identity() -> Self {
        UrGroupElement { kind: Kind::Phase(GaussianRational::one()) }
    }

    pub fn is_antilinear(&self) -> bool {
        matches!(self.kind, Kind::AntilinearK)
    }
}

/// Applies a group element to a state.
///
/// Unitary and phase kinds act linearly; K conjugates both components and
/// then applies `i * sigma_2`, sending `(u1, u2)` to `(conj(u2), -conj(u1))`.
pub fn apply_group(g: &UrGroupElement, u: &UrState) -> UrState {
    match &g.kind {
        Kind::Unitary(m) => UrState {
            u1: &(&m[0][0] * &u.u1) + &(&m[0][1] * &u.u2),
            u2: &(&m[1][0] * &u.u1) + &(&m[1][1] * &u.u2),
        },
        Kind::Phase(phi) => u.scale(phi),
        Kind::AntilinearK => UrState { u1: u.u2.conj(), u2: -u.u1.conj() },
    }
}

/// Unit-modulus Gaussian rational `(m^2 - n^2 + 2mn i) / (m^2 + n^2)`.
///
/// Every Pythagorean pair gives an exact point on the unit circle, which is
/// how the tests sample phases and SU(2) elements without leaving the field.
pub fn unit_phase(m: i64, n: i64) -> GaussianRational {
    let denom = m * m + n * n;
    assert!(denom != 0, "unit_phase requires (m, n) != (0, 0)");
    &GaussianRational::from_ratio(m * m - n * n, denom)
        + &(&GaussianRational::from_ratio(2 * m * n, denom) * &GaussianRational::i())
}

/// Exact SU(2) element `[[a, -conj(b)], [b, conj(a)]]` with
/// `a = (p/r) * unit_phase(m1, n1)` and `b = (q/r) * unit_phase(m2, n2)`
/// built from a Pythagorean triple `p^2 + q^2 = r^2`.
pub fn su2_from_triples(
    (p, q, r): (i64, i64, i64),
    (m1, n1): (i64, i64),
    (m2, n2): (i64, i64),
) -> Result<UrGroupElement, UrError> {
    assert!(p * p + q * q == r * r && r != 0, "not a Pythagorean triple");
    let a = &GaussianRational::from_ratio(p, r) * &unit_phase(m1, n1);
    let b = &GaussianRational::from_ratio(q, r) * &unit_phase(m2, n2);
    UrGroupElement::unitary([[a.clone(), -b.conj()], [b, a.conj()]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn norm_examples() {
        assert_eq!(ur_norm(&UrState::new(G::one(), G::zero())), rat(1));
        let pythagorean = UrState::new(G::from_ratio(3, 5), &G::from_ratio(4, 5) * &G::i());
        assert_eq!(ur_norm(&pythagorean), rat(1));
        let mixed = UrState::new(&G::one() + &G::i(), &G::one() - &G::i());
        assert_eq!(ur_norm(&mixed), rat(4));
    }

    #[test]
    fn identity_acts_trivially() {
        let u = UrState::new(G::from_ratio(2, 7), &G::from_int(3) * &G::i());
        assert_eq!(apply_group(&UrGroupElement::identity(), &u), u);
    }

    #[test]
    fn k_on_first_basis_state() {
        let k = UrGroupElement::antilinear_k();
        let u = UrState::new(G::one(), G::zero());
        assert_eq!(apply_group(&k, &u), UrState::new(G::zero(), -G::one()));
    }

    #[test]
    fn k_squared_is_minus_identity() {
        let k = UrGroupElement::antilinear_k();
        let u = UrState::new(&G::from_ratio(1, 3) + &G::i(), G::from_int(-2));
        assert_eq!(apply_group(&k, &apply_group(&k, &u)), u.neg());
    }

    #[test]
    fn k_is_antilinear() {
        let k = UrGroupElement::antilinear_k();
        let lambda = &G::from_ratio(2, 5) - &(&G::from_int(3) * &G::i());
        let u = UrState::new(&G::one() + &G::i(), G::from_ratio(7, 2));
        let left = apply_group(&k, &u.scale(&lambda));
        let right = apply_group(&k, &u).scale(&lambda.conj());
        assert_eq!(left, right);
    }

    #[test]
    fn unitary_constructor_rejects_bad_matrices() {
        let shear = UrGroupElement::unitary([[G::one(), G::one()], [G::zero(), G::one()]]);
        assert!(matches!(shear, Err(UrError::NotSpecialUnitary(_))));
        let det_minus_one = UrGroupElement::unitary([[G::i(), G::zero()], [G::zero(), G::i()]]);
        assert!(matches!(det_minus_one, Err(UrError::NotSpecialUnitary(_))));
    }

    #[test]
    fn phase_constructor_rejects_off_circle() {
        assert!(UrGroupElement::phase(G::from_int(2)).is_err());
        assert!(UrGroupElement::phase(unit_phase(2, 1)).is_ok());
    }

    #[test]
    fn su2_sample_is_accepted_and_rotates() {
        let g = su2_from_triples((3, 4, 5), (2, 1), (1, 0)).unwrap();
        let u = UrState::new(G::one(), G::zero());
        let v = apply_group(&g, &u);
        assert_eq!(ur_norm(&v), rat(1));
        assert_ne!(v, u);
    }

    fn arb_scalar() -> impl Strategy<Value = G> {
        (-6i64..=6, -6i64..=6, 1i64..=5).prop_map(|(re, im, den)| {
            &G::from_ratio(re, den) + &(&G::from_ratio(im, den) * &G::i())
        })
    }

    fn arb_state() -> impl Strategy<Value = UrState> {
        (arb_scalar(), arb_scalar()).prop_map(|(u1, u2)| UrState::new(u1, u2))
    }

    fn arb_element() -> impl Strategy<Value = UrGroupElement> {
        let triples = prop_oneof![Just((3i64, 4i64, 5i64)), Just((5, 12, 13)), Just((8, 15, 17))];
        let pair = (1i64..=4, 0i64..=3);
        prop_oneof![
            (triples, pair.clone(), pair.clone()).prop_map(|(t, ph1, ph2)| {
                su2_from_triples(t, ph1, ph2).expect("triple construction is exact")
            }),
            pair.prop_map(|(m, n)| UrGroupElement::phase(unit_phase(m, n)).unwrap()),
            Just(UrGroupElement::antilinear_k()),
        ]
    }

    proptest! {
        #[test]
        fn group_preserves_norm(g in arb_element(), u in arb_state()) {
            prop_assert_eq!(ur_norm(&apply_group(&g, &u)), ur_norm(&u));
        }

        #[test]
        fn k_antilinearity_property(lambda in arb_scalar(), u in arb_state()) {
            let k = UrGroupElement::antilinear_k();
            let left = apply_group(&k, &u.scale(&lambda));
            let right = apply_group(&k, &u).scale(&lambda.conj());
            prop_assert_eq!(left, right);
        }

        #[test]
        fn k_squared_property(u in arb_state()) {
            let k = UrGroupElement::antilinear_k();
            prop_assert_eq!(apply_group(&k, &apply_group(&k, &u)), u.neg());
        }
    }
}
