//! Exact Phase-I simplex over the integers.
//!
//! Decides feasibility of {x ≥ 0 : A·x = b} for integer A and b, returning
//! either an exact rational solution or Farkas multipliers π with πᵀA ≤ 0
//! and πᵀb > 0 (the classical certificate that no solution exists).
//!
//! The tableau is kept *fraction-free*: we store d·T, where T is the usual
//! simplex tableau and d > 0 is the determinant of the current basis.  By
//! Cramer's rule every stored entry equals a subdeterminant of the input
//! augmented matrix, so coefficient growth is bounded by Hadamard's
//! inequality instead of compounding pivot after pivot, and the single
//! division in the update rule is always exact.  Bland's least-index rule
//! makes the walk finite even on the highly degenerate systems the
//! separability reduction produces (most right-hand sides are zero).
//!
//! The engine is generic over the cell type.  The i128 instantiation runs
//! first with checked arithmetic — for the dimensions this crate meets,
//! subdeterminants of 0/±1 matrices essentially never approach 2^127 — and
//! any overflow restarts the solve with heap-allocated integers, which
//! cannot overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Outcome of a feasibility solve for {x ≥ 0 : A·x = b}.
pub(crate) enum Feasibility {
    /// Values for the structural variables, in column order.
    Feasible(Vec<BigRational>),
    /// One multiplier per row: πᵀA ≤ 0 componentwise, yet πᵀb > 0.
    Infeasible(Vec<BigRational>),
}

/// Integer cell the tableau engine can run on.  `None` results mean
/// "overflowed, escalate"; the BigInt implementation never overflows.
trait Cell: Clone + Ord + Sized {
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    /// Exact quotient; the caller guarantees divisibility.
    fn div_exact(&self, other: &Self) -> Self;
}

impl Cell for i128 {
    fn from_bigint(v: &BigInt) -> Option<Self> {
        use num_traits::ToPrimitive;
        v.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(self % other == 0, "inexact division in tableau update");
        self / other
    }
}

impl Cell for BigInt {
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        BigInt::ZERO
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(
            Zero::is_zero(&(self % other)),
            "inexact division in tableau update"
        );
        self / other
    }
}

/// Decide feasibility of {x ≥ 0 : A·x = b}.  `a` is row-major with equal
/// row lengths; `b` has one entry per row.
pub(crate) fn solve_eq_nonneg(a: &[Vec<BigInt>], b: &[BigInt]) -> Feasibility {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    match run::<i128>(a, b) {
        Some(result) => result,
        None => run::<BigInt>(a, b).expect("bignum tableau cannot overflow"),
    }
}

fn run<C: Cell>(a: &[Vec<BigInt>], b: &[BigInt]) -> Option<Feasibility> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let width = cols + rows + 1; // structural + artificial + rhs
    let rhs = width - 1;

    // Normalize each row to b_i ≥ 0 so the all-artificial basis is
    // feasible; remember the flips to restore the dual signs at the end.
    let mut flipped = vec![false; rows];
    let mut t: Vec<Vec<C>> = Vec::with_capacity(rows + 1);
    for i in 0..rows {
        assert_eq!(a[i].len(), cols, "ragged constraint matrix");
        flipped[i] = Signed::is_negative(&b[i]);
        let mut row: Vec<C> = Vec::with_capacity(width);
        for cell in &a[i] {
            let v = C::from_bigint(cell)?;
            row.push(if flipped[i] { v.neg() } else { v });
        }
        for k in 0..rows {
            row.push(if k == i {
                C::from_bigint(&BigInt::from(1))?
            } else {
                C::zero()
            });
        }
        let v = C::from_bigint(&b[i])?;
        row.push(if flipped[i] { v.neg() } else { v });
        t.push(row);
    }
    // Phase-I cost row: minimize the artificial sum.  Starting from the
    // identity basis of artificials, the reduced-cost row is the original
    // cost vector (0…0, 1…1, 0) minus the sum of all constraint rows.
    let mut cost: Vec<C> = vec![C::zero(); width];
    for j in 0..width {
        let mut acc = if j >= cols && j < rhs {
            C::from_bigint(&BigInt::from(1))?
        } else {
            C::zero()
        };
        for row in t.iter() {
            acc = acc.sub(&row[j])?;
        }
        cost[j] = acc;
    }
    t.push(cost);

    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    let mut banned = vec![false; cols + rows]; // artificials, once they leave
    let mut d = C::from_bigint(&BigInt::from(1))?;

    let mut pivots = 0usize;
    loop {
        // Bland: enter at the least non-banned column with a negative
        // reduced cost (the stored sign is the true sign since d > 0).
        let enter = (0..cols + rows).find(|&j| !banned[j] && t[rows][j].is_negative());
        let Some(e) = enter else {
            return Some(extract(&t, &basis, &d, &flipped, rows, cols));
        };

        // Ratio test on stored values; ratios compare by cross
        // multiplication, ties break toward the least basic index.
        let mut leave: Option<usize> = None;
        for i in 0..rows {
            if !t[i][e].is_positive() {
                continue;
            }
            match leave {
                None => leave = Some(i),
                Some(r) => {
                    let lhs = t[i][rhs].mul(&t[r][e])?;
                    let rhsv = t[r][rhs].mul(&t[i][e])?;
                    if lhs < rhsv || (lhs == rhsv && basis[i] < basis[r]) {
                        leave = Some(i);
                    }
                }
            }
        }
        // The phase-I objective is bounded below by zero, so an improving
        // column always admits a pivot row.
        let r = leave.expect("improving column with no positive entry");

        let piv = t[r][e].clone();
        for i in 0..=rows {
            if i == r {
                continue;
            }
            let factor = t[i][e].clone();
            if factor.is_zero() && piv == d {
                continue; // row is unchanged: (piv·x − 0)/d = x
            }
            // Reads row r while writing row i; an iterator form would
            // need split_at_mut gymnastics for no clarity gain.
            #[allow(clippy::needless_range_loop)]
            for j in 0..width {
                let hi = piv.mul(&t[i][j])?;
                let lo = factor.mul(&t[r][j])?;
                t[i][j] = hi.sub(&lo)?.div_exact(&d);
            }
        }
        if basis[r] >= cols {
            banned[basis[r]] = true;
        }
        basis[r] = e;
        d = piv;

        pivots += 1;
        assert!(
            pivots < 10_000_000,
            "Bland's rule cannot cycle; pivot bound exceeded"
        );
    }
}

fn extract<C: Cell>(
    t: &[Vec<C>],
    basis: &[usize],
    d: &C,
    flipped: &[bool],
    rows: usize,
    cols: usize,
) -> Feasibility {
    let rhs = cols + rows;
    let den = d.to_bigint();
    if t[rows][rhs].is_zero() {
        // Zero artificial sum: read the structural values off the basis.
        let mut x = vec![BigRational::zero(); cols];
        for (i, &j) in basis.iter().enumerate() {
            if j < cols {
                x[j] = BigRational::new(t[i][rhs].to_bigint(), den.clone());
            }
        }
        Feasibility::Feasible(x)
    } else {
        // Positive optimum: the simplex multipliers are a Farkas
        // certificate.  π_k = 1 − (reduced cost of artificial k), read from
        // the cost row; un-flip the rows we negated during setup.
        let mut pi = Vec::with_capacity(rows);
        for k in 0..rows {
            let stored = t[rows][cols + k].to_bigint();
            let mut v = BigRational::new(&den - stored, den.clone());
            if flipped[k] {
                v = -v;
            }
            pi.push(v);
        }
        Feasibility::Infeasible(pi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn big(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn check_feasible(a: &[Vec<BigInt>], b: &[BigInt], x: &[BigRational]) {
        for (row, bi) in a.iter().zip(b) {
            let lhs: BigRational = row
                .iter()
                .zip(x)
                .map(|(c, xi)| BigRational::from_integer(c.clone()) * xi)
                .sum();
            assert_eq!(lhs, BigRational::from_integer(bi.clone()));
        }
        assert!(x.iter().all(|xi| *xi >= BigRational::zero()));
    }

    fn check_farkas(a: &[Vec<BigInt>], b: &[BigInt], pi: &[BigRational]) {
        let cols = a[0].len();
        for j in 0..cols {
            let dot: BigRational = pi
                .iter()
                .zip(a)
                .map(|(p, row)| p * BigRational::from_integer(row[j].clone()))
                .sum();
            assert!(
                dot <= BigRational::zero(),
                "πᵀA must be ≤ 0, got {dot} at column {j}"
            );
        }
        let dot: BigRational = pi
            .iter()
            .zip(b)
            .map(|(p, bi)| p * BigRational::from_integer(bi.clone()))
            .sum();
        assert!(dot > BigRational::zero(), "πᵀb must be positive, got {dot}");
    }

    #[test]
    fn solves_a_plain_feasible_system() {
        // x₁ + x₂ = 3, x₁ − x₂ = 1 → (2, 1).
        let a = vec![big(&[1, 1]), big(&[1, -1])];
        let b = big(&[3, 1]);
        match solve_eq_nonneg(&a, &b) {
            Feasibility::Feasible(x) => {
                check_feasible(&a, &b, &x);
                assert_eq!(x[0], BigRational::from_integer(2.into()));
                assert_eq!(x[1], BigRational::one());
            }
            Feasibility::Infeasible(_) => panic!("system is feasible"),
        }
    }

    #[test]
    fn certifies_an_infeasible_system() {
        // x₁ + x₂ = −1 has no nonnegative solution.
        let a = vec![big(&[1, 1])];
        let b = big(&[-1]);
        match solve_eq_nonneg(&a, &b) {
            Feasibility::Feasible(_) => panic!("system is infeasible"),
            Feasibility::Infeasible(pi) => check_farkas(&a, &b, &pi),
        }
    }

    #[test]
    fn certifies_infeasibility_needing_row_combination() {
        // x₁ − x₂ = 2 and x₁ − x₂ = 1 conflict only jointly.
        let a = vec![big(&[1, -1]), big(&[1, -1])];
        let b = big(&[2, 1]);
        match solve_eq_nonneg(&a, &b) {
            Feasibility::Feasible(_) => panic!("system is infeasible"),
            Feasibility::Infeasible(pi) => check_farkas(&a, &b, &pi),
        }
    }

    #[test]
    fn handles_degenerate_zero_rhs() {
        // x₁ − x₂ = 0, x₁ + x₂ = 1: feasible at (1/2, 1/2).
        let a = vec![big(&[1, -1]), big(&[1, 1])];
        let b = big(&[0, 1]);
        match solve_eq_nonneg(&a, &b) {
            Feasibility::Feasible(x) => {
                check_feasible(&a, &b, &x);
                assert_eq!(x[0], BigRational::new(1.into(), 2.into()));
            }
            Feasibility::Infeasible(_) => panic!("system is feasible"),
        }
    }

    #[test]
    fn handles_redundant_rows() {
        // Duplicate consistent rows leave an artificial basic at zero.
        let a = vec![big(&[1, 1]), big(&[1, 1]), big(&[1, -1])];
        let b = big(&[2, 2, 0]);
        match solve_eq_nonneg(&a, &b) {
            Feasibility::Feasible(x) => check_feasible(&a, &b, &x),
            Feasibility::Infeasible(_) => panic!("system is feasible"),
        }
    }

    #[test]
    fn agrees_with_brute_force_on_random_small_systems() {
        use crate::rng;
        use rand::RngCore;
        // 2×3 systems with entries in [−3, 3]: compare against feasibility
        // of the rational solution set probed on a coarse grid is not
        // exact, so instead verify whichever certificate comes back — that
        // check is sound for both answers and complete as a pair.
        let mut r = rng::substream(99, 0);
        for _ in 0..500 {
            let a: Vec<Vec<BigInt>> = (0..2)
                .map(|_| {
                    (0..3)
                        .map(|_| BigInt::from(rng::uniform_in(&mut r, -3, 3)))
                        .collect()
                })
                .collect();
            let b: Vec<BigInt> = (0..2)
                .map(|_| BigInt::from(rng::uniform_in(&mut r, -3, 3)))
                .collect();
            match solve_eq_nonneg(&a, &b) {
                Feasibility::Feasible(x) => check_feasible(&a, &b, &x),
                Feasibility::Infeasible(pi) => check_farkas(&a, &b, &pi),
            }
            let _ = r.next_u64();
        }
    }

    #[test]
    fn bigint_path_matches_i128_path() {
        // Force the BigInt engine by calling it directly on a system the
        // i128 engine also solves, and compare the classification.
        let a = vec![big(&[2, -1, 3]), big(&[1, 1, 1]), big(&[0, 4, -2])];
        let b = big(&[1, 1, 1]);
        let fast = run::<i128>(&a, &b).unwrap();
        let slow = run::<BigInt>(&a, &b).unwrap();
        match (fast, slow) {
            (Feasibility::Feasible(x), Feasibility::Feasible(y)) => assert_eq!(x, y),
            (Feasibility::Infeasible(x), Feasibility::Infeasible(y)) => assert_eq!(x, y),
            _ => panic!("engines disagree on feasibility"),
        }
    }
}
