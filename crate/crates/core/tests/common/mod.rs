//! Independent oracles shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schemeforge_core::digraph::Digraph;
use schemeforge_core::{parse_matrix, Polynomial, Rational, RationalMatrix};

/// Resolves from either workspace crate, since the acceptance suite includes this file too.
pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

pub fn load_fixture(name: &str) -> RationalMatrix {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_matrix(&text).expect("fixture parses")
}

/// Every fixture file, by name.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_path(""))
        .expect("fixture dir")
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".mat"))
        .collect();
    names.sort();
    names
}

/// Characteristic polynomial `det(tI − A)` by the Leverrier–Faddeev recursion:
/// `M_0 = 0`, `M_k = A·M_{k−1} + c_{n−k+1}·I`, `c_{n−k} = −tr(A·M_k)/k`.
pub fn leverrier_faddeev(a: &RationalMatrix) -> Polynomial {
    let n = a.order();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = RationalMatrix::zeros(n);
    let identity = RationalMatrix::identity(n);
    for k in 1..=n {
        m = (a * &m).add_scaled(&c[n - k + 1], &identity).unwrap();
        let am = a * &m;
        c[n - k] = -am.trace() / Rational::from_integer((k as i64).into());
    }
    Polynomial::new(c)
}

/// Counts walks of length `length` between every ordered pair by explicit
/// depth-first enumeration.
pub fn dfs_walk_count(g: &Digraph, length: usize) -> Vec<Vec<u64>> {
    fn walk(g: &Digraph, at: usize, left: usize, weight: u64, counts: &mut [u64]) {
        if left == 0 {
            counts[at] += weight;
            return;
        }
        for y in 0..g.order() {
            let m = g.multiplicity(at, y) as u64;
            if m > 0 {
                walk(g, y, left - 1, weight * m, counts);
            }
        }
    }
    (0..g.order())
        .map(|x| {
            let mut counts = vec![0; g.order()];
            walk(g, x, length, 1, &mut counts);
            counts
        })
        .collect()
}

/// Random digraph on `n` vertices; each ordered pair (loops included) is an
/// arc with probability 0.35.
pub fn random_digraph(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|_| rng.gen_bool(0.35)).collect();
    Digraph::from_arcs(n, &arcs)
}

type Grid = Vec<Vec<i64>>;

fn grid(m: &RationalMatrix) -> Option<Grid> {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|v| if v.is_zero() { Some(0) } else if v.is_one() { Some(1) } else { None })
                .collect()
        })
        .collect()
}

fn product(a: &Grid, b: &Grid) -> Grid {
    let n = a.len();
    (0..n).map(|x| (0..n).map(|y| (0..n).map(|z| a[x][z] * b[z][y]).sum()).collect()).collect()
}

/// Checks AS1–AS5 on 0/1 class matrices using plain integer arithmetic,
/// solving for each structure constant by scanning the whole product.
pub fn brute_force_axioms(classes: &[RationalMatrix]) -> Result<(), String> {
    let grids: Vec<Grid> = classes.iter().map(grid).collect::<Option<_>>().ok_or("entry not 0/1")?;
    let n = grids[0].len();
    for x in 0..n {
        for y in 0..n {
            if grids[0][x][y] != i64::from(x == y) {
                return Err("AS1".into());
            }
            if grids.iter().map(|g| g[x][y]).sum::<i64>() != 1 {
                return Err(format!("AS2 at ({x}, {y})"));
            }
        }
    }
    for (i, g) in grids.iter().enumerate() {
        let t: Grid = (0..n).map(|x| (0..n).map(|y| g[y][x]).collect()).collect();
        if !grids.contains(&t) {
            return Err(format!("AS3 for class {i}"));
        }
    }
    for (i, gi) in grids.iter().enumerate() {
        for (j, gj) in grids.iter().enumerate() {
            let p = product(gi, gj);
            if p != product(gj, gi) {
                return Err(format!("AS5 for ({i}, {j})"));
            }
            for (h, gh) in grids.iter().enumerate() {
                let mut values = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| gh[x][y] == 1).map(|(x, y)| p[x][y]);
                let first = values.next().ok_or(format!("empty class {h}"))?;
                if first < 0 || values.any(|v| v != first) {
                    return Err(format!("AS4 for ({i}, {j}, {h})"));
                }
            }
        }
    }
    Ok(())
}
