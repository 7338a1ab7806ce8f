//! Reference matrices shared by tests, the CLI and the browser demo.

use crate::exact::{int, rat, Rational};
use crate::matrix::RationalMatrix;

fn thirds(rows: [[i64; 8]; 8]) -> RationalMatrix {
    RationalMatrix::from_fn(8, |x, y| rat(rows[x][y], 3))
}

/// 8×8 doubly stochastic, irreducible, not normal. Entries in thirds.
pub fn fig1() -> RationalMatrix {
    thirds([
        [1, 0, 0, 2, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 1, 0, 0],
        [0, 2, 1, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0, 0, 1],
        [1, 0, 0, 0, 0, 0, 0, 2],
        [0, 0, 0, 0, 3, 0, 0, 0],
        [0, 0, 1, 0, 0, 2, 0, 0],
        [0, 0, 0, 0, 0, 0, 3, 0],
    ])
}

/// 6×6 normal doubly stochastic matrix generating a 3-class scheme.
/// Diagonal 1/2, two out-arcs of weight 1/4 per vertex.
pub fn fig2() -> RationalMatrix {
    const Q: [[i64; 6]; 6] = [
        [2, 1, 1, 0, 0, 0],
        [0, 2, 0, 1, 1, 0],
        [0, 0, 2, 1, 1, 0],
        [1, 0, 0, 2, 0, 1],
        [1, 0, 0, 0, 2, 1],
        [0, 1, 1, 0, 0, 2],
    ];
    RationalMatrix::from_fn(6, |x, y| rat(Q[x][y], 4))
}

/// `λ·C` where `C` is the directed n-cycle `x → x+1 (mod n)`.
pub fn cyclic(n: usize, lambda: &Rational) -> RationalMatrix {
    RationalMatrix::from_fn(n, |x, y| if y == (x + 1) % n { lambda.clone() } else { int(0) })
}

/// Adjacency matrix of the complete graph `K_n`, which is `(n−1)`-doubly stochastic.
pub fn complete(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, |x, y| if x == y { int(0) } else { int(1) })
}

/// `J/n`.
pub fn averaging(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, |_, _| rat(1, n as i64))
}

/// `3·(J_2 ⊗ I_3) + 2·(I_2 ⊗ (J_3 − I_3))` on the triangular prism with loops.
/// Symmetric and 10-doubly stochastic with eigenvalues {10, 4, −2} and
/// diameter 2, yet its two off-diagonal weights differ, so the distance-2
/// matrix is not a polynomial in it.
pub fn two_weight_prism() -> RationalMatrix {
    RationalMatrix::from_fn(6, |x, y| {
        if x % 3 == y % 3 {
            int(3)
        } else if x / 3 == y / 3 {
            int(2)
        } else {
            int(0)
        }
    })
}
