//! Square matrices over quantale values: the semiring operations, Kleene
//! star by iteration, and the partial parallel composition that splits
//! matrices into diagonal blocks.

use crate::algebra::{Carrier, CarrierBuilder, Element};
use crate::error::AlgebraError;
use crate::value::Quantale;

/// A square matrix of target values, row-major.
pub struct MatrixSeries<Q: Quantale> {
    n: usize,
    entries: Vec<Q::V>,
}

impl<Q: Quantale> Clone for MatrixSeries<Q> {
    fn clone(&self) -> Self {
        MatrixSeries {
            n: self.n,
            entries: self.entries.clone(),
        }
    }
}

impl<Q: Quantale> PartialEq for MatrixSeries<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<Q: Quantale> Eq for MatrixSeries<Q> {}

impl<Q: Quantale> std::fmt::Debug for MatrixSeries<Q> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatrixSeries(n={}, {:?})", self.n, self.entries)
    }
}

impl<Q: Quantale> MatrixSeries<Q> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Q::V) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        MatrixSeries { n, entries }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q::V {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q::V) {
        self.entries[i * self.n + j] = v;
    }
}

fn guard_dims<Q: Quantale>(
    a: &MatrixSeries<Q>,
    b: &MatrixSeries<Q>,
) -> Result<(), AlgebraError> {
    if a.n != b.n {
        Err(AlgebraError::DimensionMismatch {
            left: a.n,
            right: b.n,
        })
    } else {
        Ok(())
    }
}

pub fn matrix_zero<Q: Quantale>(n: usize, q: &Q) -> MatrixSeries<Q> {
    MatrixSeries::from_fn(n, |_, _| q.bottom())
}

pub fn matrix_unit<Q: Quantale>(n: usize, q: &Q) -> Result<MatrixSeries<Q>, AlgebraError> {
    let e = q
        .unit()
        .ok_or_else(|| AlgebraError::MissingUnit("target".to_string()))?;
    Ok(MatrixSeries::from_fn(n, |i, j| {
        if i == j {
            e.clone()
        } else {
            q.bottom()
        }
    }))
}

pub fn matrix_add<Q: Quantale>(
    q: &Q,
    a: &MatrixSeries<Q>,
    b: &MatrixSeries<Q>,
) -> Result<MatrixSeries<Q>, AlgebraError> {
    guard_dims(a, b)?;
    Ok(MatrixSeries::from_fn(a.n, |i, j| {
        q.join2(a.get(i, j), b.get(i, j))
    }))
}

/// (a·b)(i,j) = Σ_k a(i,k)·b(k,j); undefined target products contribute
/// nothing to the sum.
pub fn matrix_mult<Q: Quantale>(
    q: &Q,
    a: &MatrixSeries<Q>,
    b: &MatrixSeries<Q>,
) -> Result<MatrixSeries<Q>, AlgebraError> {
    guard_dims(a, b)?;
    Ok(MatrixSeries::from_fn(a.n, |i, j| {
        let mut acc = q.bottom();
        for k in 0..a.n {
            if let Some(p) = q.mult(a.get(i, k), b.get(k, j)) {
                acc = q.join2(&acc, &p);
            }
        }
        acc
    }))
}

/// Kleene star by iteration: x₀ = 1, x_{k+1} = 1 + m·x_k, stopping at the
/// first fixpoint.
pub fn matrix_star<Q: Quantale>(
    q: &Q,
    m: &MatrixSeries<Q>,
    cap: usize,
) -> Result<MatrixSeries<Q>, AlgebraError> {
    let unit = matrix_unit(m.n, q)?;
    let mut x = unit.clone();
    for _ in 0..cap {
        let next = matrix_add(q, &unit, &matrix_mult(q, m, &x)?)?;
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(AlgebraError::StarDivergence { cap })
}

/// Indices whose row or column carries a nonzero entry.
fn touched<Q: Quantale>(q: &Q, m: &MatrixSeries<Q>) -> Vec<bool> {
    let n = m.n;
    let zero = q.bottom();
    let mut idx = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if *m.get(i, j) != zero {
                idx[i] = true;
                idx[j] = true;
            }
        }
    }
    idx
}

/// Parallel composition: a∗b splits the index set into blocks, one per
/// factor. It is defined exactly when the touched indices (rows or
/// columns with support) of the two factors are disjoint; the result is
/// the entrywise join, so each cell holds a(i,j) where b's row and
/// column are clear and b(i,j) where a's are.
pub fn matrix_parallel<Q: Quantale>(
    q: &Q,
    a: &MatrixSeries<Q>,
    b: &MatrixSeries<Q>,
) -> Result<Option<MatrixSeries<Q>>, AlgebraError> {
    guard_dims(a, b)?;
    let (ta, tb) = (touched(q, a), touched(q, b));
    if ta.iter().zip(&tb).any(|(x, y)| *x && *y) {
        return Ok(None);
    }
    Ok(Some(MatrixSeries::from_fn(a.n, |i, j| {
        q.join2(a.get(i, j), b.get(i, j))
    })))
}

const PARALLEL_BOUND: usize = 1024;

/// Carrier of Boolean n×n matrices under parallel composition. Element k
/// encodes the matrix whose (i,j) entry is bit i·n+j of k. Unit = zero
/// matrix, commutative.
pub fn make_matrix_parallel(dimension: usize) -> Result<Carrier, AlgebraError> {
    let bits = dimension * dimension;
    let size = 1usize << bits;
    if size > PARALLEL_BOUND {
        return Err(AlgebraError::SizeBound {
            what: "parallel matrix carrier".to_string(),
            size,
            bound: PARALLEL_BOUND,
        });
    }
    let n = dimension;
    let bit = |m: usize, i: usize, j: usize| m >> (i * n + j) & 1;
    let touched = |m: usize| {
        let mut idx = 0usize;
        for i in 0..n {
            for j in 0..n {
                if bit(m, i, j) == 1 {
                    idx |= 1 << i | 1 << j;
                }
            }
        }
        idx
    };
    let b = CarrierBuilder::from_fn(size, |x, y| {
        (touched(x) & touched(y) == 0).then_some(x | y)
    });
    let labels = (0..size)
        .map(|m| {
            let rows: Vec<String> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if bit(m, i, j) == 1 { '1' } else { '0' })
                        .collect()
                })
                .collect();
            format!("[{}]", rows.join("|"))
        })
        .collect();
    Ok(b.unit(Element(0)).commutative_hint(true).labels(labels).build())
}

/// The three-state worked automaton over truncated languages: state 1
/// loops on a+b and steps to 2 on b, state 2 steps to 3 on a.
pub fn automaton_matrix(q: &crate::value::LangQ) -> MatrixSeries<crate::value::LangQ> {
    let rows = [
        [q.lang(&["a", "b"]), q.lang(&["b"]), 0],
        [0, 0, q.lang(&["a"])],
        [0, 0, 0],
    ];
    MatrixSeries::from_fn(3, |i, j| rows[i][j])
}

/// Brute-force oracle: union of path-label products over all length-k
/// paths i → j of the matrix viewed as a labelled graph.
pub fn path_label_oracle(
    q: &crate::value::LangQ,
    m: &MatrixSeries<crate::value::LangQ>,
    k: usize,
) -> MatrixSeries<crate::value::LangQ> {
    let n = m.dimension();
    MatrixSeries::from_fn(n, |i, j| {
        let mut acc = q.bottom();
        let mut stack = vec![(i, 0usize, q.unit().unwrap())];
        while let Some((at, steps, label)) = stack.pop() {
            if steps == k {
                if at == j {
                    acc = q.join2(&acc, &label);
                }
                continue;
            }
            for next in 0..n {
                if let Some(l) = q.mult(&label, m.get(at, next)) {
                    stack.push((next, steps + 1, l));
                }
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_carrier_laws, PartialProduct};
    use crate::instances::make_relation;
    use crate::report::LawStatus;
    use crate::series::{convolve, PowerSeries};
    use crate::value::{BoolQ, LangQ, VectorQ};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn automaton(q: &LangQ) -> MatrixSeries<LangQ> {
        automaton_matrix(q)
    }

    fn path_oracle(q: &LangQ, m: &MatrixSeries<LangQ>, k: usize) -> MatrixSeries<LangQ> {
        path_label_oracle(q, m, k)
    }

    #[test]
    fn automaton_powers_match_path_oracle() {
        let q = LangQ::new(&['a', 'b'], 3);
        let m = automaton(&q);
        let m2 = matrix_mult(&q, &m, &m).unwrap();
        let m3 = matrix_mult(&q, &m2, &m).unwrap();
        assert_eq!(*m2.get(0, 2), q.lang(&["ba"]));
        assert_eq!(*m3.get(0, 2), q.lang(&["aba", "bba"]));
        assert_eq!(m, path_oracle(&q, &m, 1));
        assert_eq!(m2, path_oracle(&q, &m, 2));
        assert_eq!(m3, path_oracle(&q, &m, 3));
    }

    #[test]
    fn automaton_star_is_bounded_reachability() {
        let q = LangQ::new(&['a', 'b'], 3);
        let m = automaton(&q);
        let star = matrix_star(&q, &m, 1000).unwrap();
        // Words longer than the cap drop out, so the star is the union of
        // path labels over lengths 0..=3.
        let mut expect = matrix_unit(3, &q).unwrap();
        for k in 1..=3 {
            expect = matrix_add(&q, &expect, &path_oracle(&q, &m, k)).unwrap();
        }
        assert_eq!(star, expect);
        assert_eq!(*star.get(0, 2), q.lang(&["ba", "aba", "bba"]));
    }

    #[test]
    fn unit_and_zero_laws() {
        let q = LangQ::new(&['a', 'b'], 2);
        let m = automaton(&LangQ::new(&['a', 'b'], 2));
        let e = matrix_unit(3, &q).unwrap();
        let z = matrix_zero(3, &q);
        assert_eq!(matrix_mult(&q, &e, &m).unwrap(), m);
        assert_eq!(matrix_mult(&q, &m, &e).unwrap(), m);
        assert_eq!(matrix_mult(&q, &z, &m).unwrap(), z);
        assert_eq!(matrix_add(&q, &z, &m).unwrap(), m);
    }

    #[test]
    fn dimension_mismatch() {
        let q = BoolQ;
        let a = matrix_zero(2, &q);
        let b = matrix_zero(3, &q);
        assert!(matches!(
            matrix_mult(&q, &a, &b),
            Err(AlgebraError::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    /// Matrices over Q are the convolution algebra of the pair carrier.
    #[test]
    fn matrix_mult_is_pair_carrier_convolution() {
        let q = BoolQ;
        for n in 1..=3usize {
            let c = make_relation(n).unwrap();
            let cells = n * n;
            for am in 0..1u32 << cells {
                for bm in 0..1u32 << cells {
                    let a = MatrixSeries::from_fn(n, |i, j| am >> (i * n + j) & 1 == 1);
                    let b = MatrixSeries::from_fn(n, |i, j| bm >> (i * n + j) & 1 == 1);
                    let ab = matrix_mult(&q, &a, &b).unwrap();
                    let fa = PowerSeries::from_fn(&c, |x| Some(am >> x.index() & 1 == 1));
                    let fb = PowerSeries::from_fn(&c, |x| Some(bm >> x.index() & 1 == 1));
                    let fab = convolve(&c, &q, &fa, &fb).unwrap();
                    for x in c.elements() {
                        let (i, j) = (x.index() / n, x.index() % n);
                        assert_eq!(fab.get(x).as_ref(), Some(ab.get(i, j)));
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_mult_matches_convolution_on_languages() {
        let q = LangQ::new(&['a'], 2);
        let n = 3;
        let c = make_relation(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let a = MatrixSeries::from_fn(n, |_, _| rng.gen::<u64>() & q.top());
            let b = MatrixSeries::from_fn(n, |_, _| rng.gen::<u64>() & q.top());
            let ab = matrix_mult(&q, &a, &b).unwrap();
            let fa = PowerSeries::from_fn(&c, |x| {
                Some(*a.get(x.index() / n, x.index() % n))
            });
            let fb = PowerSeries::from_fn(&c, |x| {
                Some(*b.get(x.index() / n, x.index() % n))
            });
            let fab = convolve(&c, &q, &fa, &fb).unwrap();
            for x in c.elements() {
                assert_eq!(
                    fab.get(x).as_ref(),
                    Some(ab.get(x.index() / n, x.index() % n))
                );
            }
        }
    }

    #[test]
    fn parallel_blocks() {
        let q = BoolQ;
        // diag(M1, 0) ∗ diag(0, M2) = diag(M1, M2) for 1×1 blocks.
        let a = MatrixSeries::from_fn(2, |i, j| i == 0 && j == 0);
        let b = MatrixSeries::from_fn(2, |i, j| i == 1 && j == 1);
        let ab = matrix_parallel(&q, &a, &b).unwrap().unwrap();
        assert_eq!(ab, MatrixSeries::from_fn(2, |i, j| i == j));
        // Overlapping support at (1,1) is undefined.
        assert_eq!(matrix_parallel(&q, &b, &b).unwrap(), None);
        // Zero matrix is the unit.
        let z = matrix_zero(2, &q);
        assert_eq!(matrix_parallel(&q, &a, &z).unwrap().unwrap(), a);
        assert_eq!(matrix_parallel(&q, &z, &a).unwrap().unwrap(), a);
    }

    #[test]
    fn parallel_assoc_comm_exhaustive_boolean_2x2() {
        let q = BoolQ;
        let mat = |m: u32| MatrixSeries::from_fn(2, |i, j| m >> (i * 2 + j) & 1 == 1);
        let par = |x: u32, y: u32| {
            matrix_parallel(&q, &mat(x), &mat(y)).unwrap().map(|m| {
                let mut out = 0u32;
                for i in 0..2 {
                    for j in 0..2 {
                        if *m.get(i, j) {
                            out |= 1 << (i * 2 + j);
                        }
                    }
                }
                out
            })
        };
        for x in 0..16 {
            for y in 0..16 {
                assert_eq!(par(x, y), par(y, x));
                for z in 0..16 {
                    let lhs = par(x, y).and_then(|xy| par(xy, z));
                    let rhs = par(y, z).and_then(|yz| par(x, yz));
                    assert_eq!(lhs, rhs, "assoc at {x},{y},{z}");
                }
            }
        }
    }

    #[test]
    fn parallel_carrier_laws() {
        let c = make_matrix_parallel(2).unwrap();
        assert_eq!(c.size(), 16);
        for r in check_carrier_laws(&c) {
            assert_eq!(r.status, LawStatus::Pass, "{}: {:?}", r.law, r.witness);
        }
        assert_eq!(c.compose(Element(0), Element(5)), PartialProduct::Defined(Element(5)));
        assert!(matches!(
            make_matrix_parallel(4),
            Err(AlgebraError::SizeBound { .. })
        ));
    }

    #[test]
    fn block_matrix_convolution_summands() {
        // M₁(x;0) ∗ M₂(0;y) over dimension-2 vectors: full matrices clash,
        // diagonal blocks compose.
        let q = VectorQ::new(2, 8);
        let apply = |m: [[u32; 2]; 2], v: [u32; 2]| {
            vec![
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ]
        };
        let (x, y) = (1u32, 1u32);
        let m1 = [[1, 1], [1, 1]];
        let m2 = [[1, 1], [1, 1]];
        let lhs = apply(m1, [x, 0]);
        let rhs = apply(m2, [0, y]);
        assert_eq!(lhs, vec![1, 1]);
        assert_eq!(rhs, vec![1, 1]);
        assert_eq!(q.mult(&lhs, &rhs), None);
        let m1 = [[1, 1], [0, 1]];
        let m2 = [[1, 0], [1, 1]];
        let lhs = apply(m1, [x, 0]);
        let rhs = apply(m2, [0, y]);
        assert_eq!(lhs, vec![1, 0]);
        assert_eq!(rhs, vec![0, 1]);
        assert_eq!(q.mult(&lhs, &rhs), Some(vec![1, 1]));
    }
}
