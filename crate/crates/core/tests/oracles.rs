mod common;

use common::{dfs_walk_count, fixture_names, leverrier_faddeev, load_fixture, random_digraph};
use schemeforge_core::digraph::{distance_structure, underlying_digraph, walk_count};
use schemeforge_core::exact::{int, rat};
use schemeforge_core::matrix::{algebra_membership, MatrixPowerBasis};
use schemeforge_core::stochastic::{random_lambda_ds, random_normal_lambda_ds};
use schemeforge_core::{fixtures, minimal_polynomial, predistance_basis, Polynomial, RationalMatrix};

fn divides(p: &Polynomial, q: &Polynomial) -> bool {
    q.div_rem(p).1.is_zero()
}

fn radical(p: &Polynomial) -> Polynomial {
    p.squarefree_factors().into_iter().map(|(f, _)| f).fold(Polynomial::one(), |acc, f| &acc * &f)
}

#[test]
fn fig1_characteristic_polynomial() {
    let chi = leverrier_faddeev(&fixtures::fig1());
    let expected = [
        Polynomial::from_ints(&[0, 1]),
        Polynomial::from_ints(&[-1, 1]),
        Polynomial::from_ints(&[-4, 3, 9]),
        Polynomial::from_ints(&[8, -12, 27, -18, 27]),
    ]
    .iter()
    .fold(Polynomial::one(), |acc, f| &acc * f)
    .scale(&rat(1, 243));
    assert_eq!(chi, expected);
}

#[test]
fn minimal_polynomial_divides_characteristic_polynomial() {
    let mut matrices: Vec<RationalMatrix> = fixture_names().iter().map(|n| load_fixture(n)).collect();
    matrices.extend((2..=8).map(fixtures::averaging));
    matrices.extend((0..20).map(|s| random_lambda_ds(3 + (s as usize % 6), 1 + (s as usize % 4), s)));
    matrices.push(RationalMatrix::identity(5));
    matrices.push(RationalMatrix::zeros(3));
    for b in &matrices {
        assert!(b.order() <= 8);
        let m = minimal_polynomial(b);
        let chi = leverrier_faddeev(b);
        assert!(divides(m.poly(), &chi), "m ∤ χ for\n{b}");
        // same roots: the radical of χ divides m
        assert!(divides(&radical(&chi), m.poly()));
    }
}

#[test]
fn normal_matrices_have_squarefree_minimal_polynomial() {
    let mut matrices = vec![fixtures::fig2(), fixtures::complete(5), fixtures::averaging(4)];
    matrices.extend((0..15).map(|s| random_normal_lambda_ds(2 + (s as usize % 7), 1 + (s as usize % 4), s)));
    for b in matrices {
        assert!(b.is_normal());
        let m = minimal_polynomial(&b);
        assert_eq!(m.poly(), &radical(&leverrier_faddeev(&b)).monic());
    }
}

#[test]
fn walk_count_matches_enumeration() {
    for seed in 0..20 {
        let g = random_digraph(5, seed);
        for length in 0..=4 {
            let by_power = walk_count(&g, length);
            let by_dfs = dfs_walk_count(&g, length);
            for x in 0..5 {
                for y in 0..5 {
                    assert_eq!(by_power.get(x, y), &int(by_dfs[x][y] as i64), "seed {seed} ℓ {length}");
                }
            }
        }
    }
}

#[test]
fn walk_count_with_multiple_arcs() {
    use schemeforge_core::digraph::Digraph;
    let g = Digraph::from_arcs(3, &[(0, 1), (0, 1), (1, 2), (2, 0), (2, 2)]);
    for length in 0..=5 {
        let by_dfs = dfs_walk_count(&g, length);
        let by_power = walk_count(&g, length);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(by_power.get(x, y), &int(by_dfs[x][y] as i64));
            }
        }
    }
}

/// Inputs that reach the `A_D = p_D(B)` comparison.
fn pipeline_inputs() -> Vec<RationalMatrix> {
    let mut out = vec![fixtures::fig2(), fixtures::complete(4), fixtures::averaging(3)];
    out.extend((3..=8).map(|n| fixtures::cyclic(n, &rat(2, 5))));
    let c6 = fixtures::cyclic(6, &int(1));
    out.push(&RationalMatrix::identity(6) + &c6);
    out.push(&c6 + &c6.transpose());
    out.push(&(&c6 + &c6.transpose()) + &c6.pow(3));
    out.push(fixtures::two_weight_prism());
    out.extend((0..60).map(|s| random_normal_lambda_ds(3 + (s as usize % 6), 1 + (s as usize % 3), s)));
    out
}

#[test]
fn ad_gate_agrees_with_membership_solver() {
    let mut compared = 0;
    let (mut members, mut non_members) = (0, 0);
    for b in pipeline_inputs() {
        let Ok(ds) = underlying_digraph(&b).and_then(|g| distance_structure(&g)) else { continue };
        let Ok(basis) = predistance_basis(&b) else { continue };
        let diameter = ds.diameter();
        if basis.d() != diameter {
            continue;
        }
        compared += 1;
        let gate = basis.evaluations[diameter] == *ds.class(diameter);
        let powers = MatrixPowerBasis::new(&b, basis.d());
        let solved = algebra_membership(ds.class(diameter), &powers);
        assert_eq!(gate, solved.is_some(), "gate and solver disagree on\n{b}");
        if let Some(p) = solved {
            assert_eq!(p, basis.polys[diameter]);
            members += 1;
        } else {
            non_members += 1;
        }
    }
    assert!(compared >= 15, "{compared}");
    assert!(members > 0 && non_members > 0, "members {members}, non-members {non_members}");
}
