//! The exact simplex against a brute-force basic-solution oracle.

use coherence::lp::{maximize_component_sum, solve_feasibility, FeasibilityCertificate, LinearSystem};
use coherence::{ratio, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Solves `M z = rhs` exactly when `M` has full column rank; `None` when
/// the system is inconsistent or the columns are dependent.
fn unique_solution(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let mut pivot_row = 0;
    for c in 0..cols {
        let p = (pivot_row..rows).find(|&r| !aug[r][c].is_zero())?;
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][c].recip();
        for v in aug[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                let pivot = aug[pivot_row].clone();
                for (v, p) in aug[r].iter_mut().zip(&pivot) {
                    *v = &*v - &f * p;
                }
            }
        }
        pivot_row += 1;
    }
    if aug[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| aug[c][cols].clone()).collect())
}

/// Feasibility by enumerating column subsets of size ≤ rows + 1.
fn brute_force_feasible(system: &LinearSystem<Rational>) -> bool {
    let n = system.unknowns();
    let mut a: Vec<Vec<Rational>> = system.coefficients().to_vec();
    a.push(vec![Rational::one(); n]);
    let mut b = system.rhs().to_vec();
    b.push(Rational::one());
    let limit = a.len().min(n);
    (1u32..1 << n)
        .filter(|mask| mask.count_ones() as usize <= limit)
        .any(|mask| {
            let cols: Vec<usize> = (0..n).filter(|h| mask >> h & 1 == 1).collect();
            let sub: Vec<Vec<Rational>> = a
                .iter()
                .map(|row| cols.iter().map(|&h| row[h].clone()).collect())
                .collect();
            unique_solution(&sub, &b).is_some_and(|z| z.iter().all(|v| *v >= Rational::zero()))
        })
}

fn system_strategy() -> impl Strategy<Value = LinearSystem<Rational>> {
    (1usize..=4, 1usize..=10).prop_flat_map(|(rows, unknowns)| {
        (
            proptest::collection::vec(proptest::collection::vec(0i64..=4, unknowns), rows),
            proptest::collection::vec(0i64..=4, rows),
        )
            .prop_map(move |(coef, rhs)| {
                LinearSystem::new(
                    coef.iter().map(|r| r.iter().map(|&v| ratio(v, 4)).collect()).collect(),
                    rhs.iter().map(|&v| ratio(v, 4)).collect(),
                    (0..unknowns).map(|h| format!("c{h}")).collect(),
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn simplex_agrees_with_vertex_enumeration(system in system_strategy()) {
        let certificate = solve_feasibility(&system);
        prop_assert_eq!(certificate.is_feasible(), brute_force_feasible(&system));
        match certificate {
            FeasibilityCertificate::Feasible { solution } => prop_assert!(system.is_solution(&solution)),
            FeasibilityCertificate::Infeasible { dual } => {
                prop_assert!(system.gale_values(&dual).iter().all(|g| *g > Rational::zero()));
            }
        }
    }

    #[test]
    fn component_sum_ignores_row_order(system in system_strategy(), mask in 0u32..1024) {
        let index_set: Vec<usize> = (0..system.unknowns()).filter(|h| mask >> h & 1 == 1).collect();
        let reversed = LinearSystem::new(
            system.coefficients().iter().rev().cloned().collect(),
            system.rhs().iter().rev().cloned().collect(),
            system.labels().to_vec(),
        );
        match (maximize_component_sum(&system, &index_set), maximize_component_sum(&reversed, &index_set)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a.optimum, &b.optimum);
                prop_assert!(system.is_solution(&a.argmax));
                let attained = index_set.iter().fold(Rational::zero(), |s, &h| s + &a.argmax[h]);
                prop_assert_eq!(attained, a.optimum);
            }
            (Err(_), Err(_)) => prop_assert!(!solve_feasibility(&system).is_feasible()),
            _ => prop_assert!(false, "row order changed feasibility"),
        }
    }
}

#[test]
fn empty_index_set_has_zero_optimum() {
    let system = LinearSystem::new(
        vec![vec![ratio(1, 1), ratio(0, 1)]],
        vec![ratio(1, 2)],
        vec!["a".into(), "b".into()],
    );
    assert_eq!(maximize_component_sum(&system, &[]).unwrap().optimum, ratio(0, 1));
}
