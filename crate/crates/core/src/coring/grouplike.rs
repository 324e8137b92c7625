use super::Coring;
use crate::linalg::{vector, Field, Scalar};

/// Candidate budget for exhaustive grouplike enumeration.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Result of a grouplike search. `exhaustive` is true only when every
/// element with `ε(g) = 1` was examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrouplikeSearch {
    pub grouplikes: Vec<Vec<Scalar>>,
    pub exhaustive: bool,
    pub examined: u64,
}

/// `Δ(g) = g ⊗_A g` and `ε(g) = 1`.
pub fn is_grouplike(coring: &Coring, g: &[Scalar]) -> bool {
    g.len() == coring.dim()
        && coring.epsilon(g) == coring.algebra().unit()
        && coring.square().project_vec(&coring.lift().mul_vec(g)) == coring.square().element(g, g)
}

/// Over a prime field whose slice `{ε(g) = 1}` has at most `budget`
/// points, enumerates that slice and returns every grouplike in
/// lexicographic order of coordinates. Otherwise checks `candidates` and the
/// coring's own hints and reports the search as non-exhaustive.
pub fn find_grouplikes(coring: &Coring, candidates: &[Vec<Scalar>], budget: u64) -> GrouplikeSearch {
    let field = coring.field();
    let slice = coring.counit().solve_affine(coring.algebra().unit()).expect("counit system is well-shaped");
    let Some(slice) = slice else {
        return GrouplikeSearch {
            grouplikes: Vec::new(),
            exhaustive: true,
            examined: 0,
        };
    };
    let d = slice.kernel.len();
    if let Field::Prime(p) = field {
        let size = (p as u64).checked_pow(d as u32);
        if let Some(size) = size.filter(|&s| s <= budget) {
            let mut found = Vec::new();
            let mut digits = vec![0u32; d];
            for _ in 0..size {
                let mut g = slice.particular.clone();
                for (k, &c) in digits.iter().enumerate() {
                    if c != 0 {
                        vector::axpy(&mut g, &field.from_i64(c as i64), &slice.kernel[k]);
                    }
                }
                if is_grouplike(coring, &g) {
                    found.push(g);
                }
                for digit in digits.iter_mut().rev() {
                    *digit += 1;
                    if *digit < p {
                        break;
                    }
                    *digit = 0;
                }
            }
            found.sort_by_key(|g| sort_key(g));
            return GrouplikeSearch {
                grouplikes: found,
                exhaustive: true,
                examined: size,
            };
        }
    }
    let mut found: Vec<Vec<Scalar>> = Vec::new();
    let mut examined = 0;
    for g in candidates.iter().chain(coring.hints()) {
        examined += 1;
        if is_grouplike(coring, g) && !found.contains(g) {
            found.push(g.clone());
        }
    }
    found.sort_by_key(|g| sort_key(g));
    GrouplikeSearch {
        grouplikes: found,
        exhaustive: false,
        examined,
    }
}

fn sort_key(g: &[Scalar]) -> Vec<(num_bigint::BigInt, num_bigint::BigInt)> {
    g.iter().map(Scalar::numer_denom).collect()
}
