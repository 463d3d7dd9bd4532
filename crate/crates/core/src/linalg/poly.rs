/// Real polynomial with coefficients in ascending degree order.
///
/// Trailing zero coefficients are trimmed on construction, so the last
/// stored coefficient is the (nonzero) leading one. The zero polynomial
/// has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut coeffs = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Rescales so the largest coefficient magnitude is one (sign kept).
    fn normalized(&self) -> Self {
        let m = self.max_abs_coeff();
        if m == 0.0 {
            self.clone()
        } else {
            self.scale(1.0 / m)
        }
    }

    /// Remainder of polynomial long division by `divisor`.
    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let q = r[top] / lead;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                r[top - d + i] -= q * c;
            }
            r.pop();
        }
        Polynomial::new(r)
    }
}

/// Relative size below which a Sturm remainder is treated as zero.
const STURM_ZERO: f64 = 1e-12;

/// Sturm sequence `p, p', -rem(p, p'), ...`, each member scaled to unit
/// max-coefficient. The chain stops at the (numerical) gcd of `p` and `p'`,
/// so sign-change counts give the number of distinct real roots.
fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.normalized()];
    let dp = p.derivative();
    if dp.is_zero() {
        return chain;
    }
    chain.push(dp.normalized());
    loop {
        let n = chain.len();
        if chain[n - 1].degree() == Some(0) {
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        let mut coeffs: Vec<f64> = r.coeffs().iter().map(|c| -c).collect();
        // Drop leading coefficients lost to cancellation.
        while coeffs.last().is_some_and(|c| c.abs() <= STURM_ZERO * 1e-2) {
            coeffs.pop();
        }
        let next = Polynomial::new(coeffs);
        if next.is_zero() || next.max_abs_coeff() <= STURM_ZERO {
            break;
        }
        chain.push(next.normalized());
    }
    chain
}

fn sign_changes(chain: &[Polynomial], x: f64) -> usize {
    let mut changes = 0;
    let mut last = 0.0_f64;
    for s in chain {
        let v = s.eval(x);
        if v != 0.0 {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                changes += 1;
            }
            last = v;
        }
    }
    changes
}

/// Real roots of `p` in `[lo, hi]`, isolated by Sturm counting and refined
/// by bisection to interval width `tol`. Sorted ascending; a root of higher
/// multiplicity, or a cluster narrower than `tol`, is reported once.
pub fn real_roots(p: &Polynomial, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    assert!(!p.is_zero(), "real_roots of the zero polynomial");
    assert!(lo < hi, "empty search interval");
    assert!(tol > 0.0, "tolerance must be positive");
    let mut roots = Vec::new();
    if p.degree() == Some(0) {
        return roots;
    }
    let chain = sturm_chain(p);
    if p.eval(lo) == 0.0 {
        roots.push(lo);
    }

    let mut stack = vec![(lo, hi, sign_changes(&chain, lo), sign_changes(&chain, hi))];
    while let Some((a, b, va, vb)) = stack.pop() {
        if va <= vb {
            continue;
        }
        let mid = 0.5 * (a + b);
        if b - a <= tol || mid <= a || mid >= b {
            roots.push(if p.eval(b) == 0.0 { b } else { mid });
            continue;
        }
        let vm = sign_changes(&chain, mid);
        stack.push((a, mid, va, vm));
        stack.push((mid, b, vm, vb));
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_simple_quadratics() {
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        assert_eq!(real_roots(&p, -2.0, 2.0, 1e-12), vec![-1.0, 1.0]);

        let q = Polynomial::new(vec![1.0, 0.0, 1.0]);
        assert!(real_roots(&q, -2.0, 2.0, 1e-12).is_empty());
    }

    #[test]
    fn cube_root_is_unique() {
        let a: f64 = 5.0 / 8.0;
        let p = Polynomial::new(vec![-a.powi(3), 0.0, 0.0, 1.0]);
        let roots = real_roots(&p, -1.0, 1.0, 1e-13);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - a).abs() < 1e-12);
    }

    #[test]
    fn repeated_root_reported_once() {
        let p = Polynomial::from_roots(&[0.25, 0.25, -0.5]);
        let roots = real_roots(&p, -1.0, 1.0, 1e-12);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] + 0.5).abs() < 1e-11);
        assert!((roots[1] - 0.25).abs() < 1e-8);

        let zero_root = Polynomial::new(vec![0.0, 0.0, 0.0, 1.0]);
        assert_eq!(real_roots(&zero_root, -1.0, 1.0, 1e-12), vec![0.0]);
    }

    #[test]
    fn root_on_lower_endpoint_is_kept() {
        let p = Polynomial::from_roots(&[-1.0, 0.5]);
        let roots = real_roots(&p, -1.0, 1.0, 1e-12);
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], -1.0);
    }

    #[test]
    fn remainder_and_derivative() {
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        assert_eq!(p.derivative(), Polynomial::new(vec![0.0, 2.0]));
        let r = p.rem(&Polynomial::new(vec![-1.0, 1.0]));
        assert!(r.is_zero());
        assert_eq!(Polynomial::new(vec![1.0, 0.0, 0.0]).degree(), Some(0));
        assert_eq!(Polynomial::new(vec![0.0]).degree(), None);
    }
}
