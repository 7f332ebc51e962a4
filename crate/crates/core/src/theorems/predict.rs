//! Predicted Witt classes and invariants as pure functions of the degrees.

use crate::field::{Elem, Field};
use crate::quadform::{BrauerClass, QuaternionSymbol, WittClass};

/// The class of the integer `bit` modulo wp(F): 0, or the class of 1.
pub fn bit_class(f: &Field, bit: bool) -> Elem {
    if bit {
        f.wp_class(Elem::ONE)
    } else {
        Elem::ZERO
    }
}

/// Whether [1,1] and H coincide over `f`, i.e. 1 lies in wp(F).
pub fn classes_coincide(f: &Field) -> bool {
    f.wp_member(Elem::ONE)
}

fn nonsingular(f: &Field, dim: usize, arf: Elem) -> WittClass {
    WittClass { field: f.clone(), dim, arf: f.wp_class(arf), radical_dim: 0 }
}

/// Dimension of T_{A/F} for a CSA of degree n.
pub fn trace_form_dim(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n * n
    } else {
        n * n - 1
    }
}

/// T_{M_n/F}: H-type for n = 0, 1, 2, 7 mod 8, [1,1]-type for n = 3, 4, 5, 6.
pub fn predicted_matrix_class(f: &Field, n: usize) -> WittClass {
    nonsingular(f, trace_form_dim(n), bit_class(f, matches!(n % 8, 3..=6)))
}

/// T_{E/F} for a Galois extension of odd degree n = 2m + 1: m H for
/// n = 1, 7 mod 8, [1,1] + (m - 1) H for n = 3, 5 mod 8.
pub fn predicted_odd_extension_class(f: &Field, n: usize) -> WittClass {
    assert!(n % 2 == 1, "odd degree");
    nonsingular(f, n - 1, bit_class(f, matches!(n % 8, 3 | 5)))
}

/// T_{A/F} for a crossed product over a cyclic extension of degree n: T_E
/// (odd n) or T_E + (B, t_2) (even n), plus one hyperbolic plane per
/// E-line in each pair {s, s^-1} with s^2 != 1.
pub fn predicted_crossed(f: &Field, n: usize, t_e: &WittClass, b: &WittClass) -> WittClass {
    let pairs = if n % 2 == 1 { (n - 1) / 2 } else { (n - 2) / 2 };
    nonsingular(f, t_e.dim + b.dim + 2 * pairs * n, t_e.arf + b.arf)
}

/// The case split of the tensor product formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorBranch {
    OddOdd,
    /// Both degrees 2 mod 4.
    TwoTwo,
    /// One degree 0 mod 4, the other even.
    ZeroEven,
    /// n_i = 0 mod 4 with n_j odd, or n_i = 2 mod 4 with n_j = 1 mod 4.
    /// `i` is the index (0 or 1) of the even factor.
    Mixed {
        i: usize,
    },
    /// n_i = 2 mod 4 with n_j = 3 mod 4.
    MixedThree {
        i: usize,
    },
}

pub fn tensor_branch(n1: usize, n2: usize) -> TensorBranch {
    let (r1, r2) = (n1 % 4, n2 % 4);
    match (r1 % 2, r2 % 2) {
        (1, 1) => TensorBranch::OddOdd,
        (0, 0) if r1 == 2 && r2 == 2 => TensorBranch::TwoTwo,
        (0, 0) => TensorBranch::ZeroEven,
        _ => {
            let (i, ri, rj) = if r1 % 2 == 0 { (0, r1, r2) } else { (1, r2, r1) };
            if ri == 2 && rj == 3 {
                TensorBranch::MixedThree { i }
            } else {
                TensorBranch::Mixed { i }
            }
        }
    }
}

/// Witt class and exact dimension of T_{A_1 (x) A_2 / F} from the classes
/// of T_{A_1/F} and T_{A_2/F}. A degree-one factor has the 0-dimensional
/// form.
pub fn predicted_tensor(t1: &WittClass, t2: &WittClass, n1: usize, n2: usize) -> WittClass {
    let f = &t1.field;
    let one = bit_class(f, true);
    let sq = |n: usize| n * n;
    let (t, n) = ([t1, t2], [n1, n2]);
    match tensor_branch(n1, n2) {
        TensorBranch::OddOdd => nonsingular(f, t1.dim + t2.dim + (sq(n1) - 1) * (sq(n2) - 1), t1.arf + t2.arf),
        TensorBranch::TwoTwo => nonsingular(f, sq(n1) * sq(n2), one),
        TensorBranch::ZeroEven => nonsingular(f, sq(n1) * sq(n2), Elem::ZERO),
        TensorBranch::Mixed { i } => {
            let j = 1 - i;
            nonsingular(f, t[i].dim + sq(n[i]) * (sq(n[j]) - 1), t[i].arf)
        }
        TensorBranch::MixedThree { i } => {
            let j = 1 - i;
            // [1,1] + T_i + (n_i^2 (n_j^2 - 1)/2 - 1) H
            nonsingular(f, t[i].dim + sq(n[i]) * (sq(n[j]) - 1), one + t[i].arf)
        }
    }
}

/// T_{A (x) A / F} for A of degree n: [1,1]-type iff n = 2 mod 4.
pub fn predicted_tensor_square(f: &Field, n: usize) -> WittClass {
    nonsingular(f, trace_form_dim(n * n), bit_class(f, n % 4 == 2))
}

/// A predicted Arf class and Clifford invariant, with the Clifford class
/// also kept symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPrediction {
    pub arf: Elem,
    pub clifford: BrauerClass,
    pub clifford_label: String,
}

fn one_one() -> QuaternionSymbol {
    QuaternionSymbol { a: Elem::ONE, b: Elem::ONE }
}

/// [A]^k for a class of exponent dividing 2.
fn brauer_power(symbols: &[QuaternionSymbol], k: usize) -> Vec<QuaternionSymbol> {
    if k % 2 == 1 {
        symbols.to_vec()
    } else {
        Vec::new()
    }
}

/// Arf = [n/4] and C = [A]^(n/2) for even n, with `brauer` the quaternion
/// symbols of [A].
pub fn predicted_even_invariants(f: &Field, n: usize, brauer: &[QuaternionSymbol]) -> InvariantPrediction {
    assert!(n.is_multiple_of(2), "even degree");
    let symbols = brauer_power(brauer, n / 2);
    InvariantPrediction {
        arf: bit_class(f, (n / 4) % 2 == 1),
        clifford: BrauerClass::reduce(f, &symbols),
        clifford_label: format!("[A]^{}", n / 2),
    }
}

/// Clifford invariant of T_{A/F} for odd degree n: that of T_{M_n/F}.
fn odd_clifford(n: usize) -> Vec<QuaternionSymbol> {
    if matches!(n % 8, 3 | 5) {
        vec![one_one()]
    } else {
        Vec::new()
    }
}

/// Arf and Clifford invariants of T_{A_1 (x) A_2 / F}, given the Arf
/// classes and Brauer symbols of the factors.
pub fn predicted_tensor_invariants(
    f: &Field,
    (n1, arf1, b1): (usize, Elem, &[QuaternionSymbol]),
    (n2, arf2, b2): (usize, Elem, &[QuaternionSymbol]),
) -> InvariantPrediction {
    let n = n1 * n2;
    let arf = if n % 2 == 1 { f.wp_class(arf1 + arf2) } else { bit_class(f, (n / 4) % 2 == 1) };
    let ns = [n1, n2];
    let bs = [b1, b2];
    let (symbols, label) = match tensor_branch(n1, n2) {
        TensorBranch::OddOdd => ([odd_clifford(n1), odd_clifford(n2)].concat(), "C(T1)C(T2)".to_string()),
        TensorBranch::TwoTwo => (vec![one_one()], "((1,1))".to_string()),
        TensorBranch::ZeroEven => (Vec::new(), "1".to_string()),
        TensorBranch::Mixed { i } => (brauer_power(bs[i], ns[i] / 2), format!("[A{}]^{}", i + 1, ns[i] / 2)),
        TensorBranch::MixedThree { i } => {
            ([vec![one_one()], brauer_power(bs[i], ns[i] / 2)].concat(), format!("((1,1))[A{}]^{}", i + 1, ns[i] / 2))
        }
    };
    InvariantPrediction { arf, clifford: BrauerClass::reduce(f, &symbols), clifford_label: label }
}

/// Both degrees odd: (n^2 - 1)/2 H for n = n_1 n_2 = 1, 7 mod 8, and
/// [1,1] + (n^2 - 3)/2 H for n = 3, 5 mod 8; the invariant pair is (0, 1)
/// or ([1,1], ((1,1))).
pub fn predicted_odd_tensor(f: &Field, n1: usize, n2: usize) -> (WittClass, InvariantPrediction) {
    let n = n1 * n2;
    assert!(n % 2 == 1, "odd degrees");
    let bit = matches!(n % 8, 3 | 5);
    let symbols = if bit { vec![one_one()] } else { Vec::new() };
    let inv = InvariantPrediction {
        arf: bit_class(f, bit),
        clifford: BrauerClass::reduce(f, &symbols),
        clifford_label: if bit { "((1,1))".into() } else { "1".into() },
    };
    (nonsingular(f, n * n - 1, bit_class(f, bit)), inv)
}
