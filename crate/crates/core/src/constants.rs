//! Effective constants of the gcd theorem and dimension counts for monomial coefficient families.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};

/// `C(top, k)`, zero for negative `top` or `k > top`.
pub fn binom(top: i64, k: i64) -> BigInt {
    if top < 0 || k < 0 || k > top {
        return BigInt::zero();
    }
    let k = k.min(top - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    acc
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsProfile {
    pub n: u32,
    pub d: u32,
    pub m: u32,
    pub big_m: BigInt,
    pub m_prime: BigInt,
    pub c_mnd: BigInt,
    pub big_l: BigInt,
    pub eps: Option<BigRational>,
    pub b: Option<u64>,
    pub w: Option<BigInt>,
    pub u: Option<BigInt>,
    pub c3: Option<BigRational>,
    pub n_threshold: Option<BigInt>,
}

impl ConstantsProfile {
    pub fn to_json(&self) -> serde_json::Value {
        let s = |x: &Option<BigInt>| x.as_ref().map(|v| v.to_string());
        let r = |x: &Option<BigRational>| x.as_ref().map(|v| v.to_string());
        json!({
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "M": self.big_m.to_string(),
            "M_prime": self.m_prime.to_string(),
            "c_mnd": self.c_mnd.to_string(),
            "L": self.big_l.to_string(),
            "eps": r(&self.eps),
            "b": self.b,
            "w": s(&self.w),
            "u": s(&self.u),
            "c3": r(&self.c3),
            "c3_source": self.c3.as_ref().map(|_| "supplied"),
            "N_threshold": s(&self.n_threshold),
        })
    }
}

/// `M`, `M'`, `c_{m,n,d}` and `L = ceil(M (M - 1) / (2 c))`.
pub fn constants(n: u32, d: u32, m: u32) -> Result<ConstantsProfile> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidInput(format!("need n >= 2 and d >= 1, got n={n}, d={d}")));
    }
    if m < 2 * d {
        return Err(Error::InvalidInput(format!("need m >= 2d, got m={m}, d={d}")));
    }
    let (n_, d_, m_) = (n as i64, d as i64, m as i64);
    let big_m = BigInt::from(2) * binom(m_ + n_ - d_, n_) - binom(m_ + n_ - 2 * d_, n_);
    let m_prime = binom(m_ + n_, n_) - &big_m;
    let c_mnd = BigInt::from(2) * binom(m_ + n_ - d_, n_ + 1) - binom(m_ + n_ - 2 * d_, n_ + 1);
    if !c_mnd.is_positive() {
        return Err(Error::InvalidInput("c_{m,n,d} is not positive".into()));
    }
    let num = &big_m * (&big_m - BigInt::one());
    let den = BigInt::from(2) * &c_mnd;
    let big_l = num.div_ceil(&den);
    Ok(ConstantsProfile {
        n,
        d,
        m,
        big_m,
        m_prime,
        c_mnd,
        big_l,
        eps: None,
        b: None,
        w: None,
        u: None,
        c3: None,
        n_threshold: None,
    })
}

/// The two quantities that must fall below `eps/4` and `eps/(4(n+1))`.
pub fn findm_quantities(p: &ConstantsProfile) -> (BigRational, BigRational) {
    let (n, m) = (p.n as i64, p.m as i64);
    let big_m = rat(&p.big_m);
    let q1 = rat(&(&p.m_prime * BigInt::from(m * n))) / &big_m;
    let lead = BigRational::new(BigInt::from(m), BigInt::from(n + 1)) * rat(&binom(m + n, n));
    let q2 = (lead - rat(&p.c_mnd) - rat(&(&p.m_prime * BigInt::from(m)))) / big_m;
    (q1, q2)
}

pub fn findm_holds(p: &ConstantsProfile, eps: &BigRational) -> bool {
    let (q1, q2) = findm_quantities(p);
    let four = BigRational::from_integer(BigInt::from(4));
    q1 <= eps / &four && q2 <= eps / (four * BigRational::from_integer(BigInt::from(p.n + 1)))
}

/// Smallest `m >= 2d` meeting both conditions.
pub fn choose_m(eps: &BigRational, n: u32, d: u32) -> Result<u32> {
    if !eps.is_positive() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    for m in 2 * d..2 * d + 1_000_000 {
        if findm_holds(&constants(n, d, m)?, eps) {
            return Ok(m);
        }
    }
    Err(Error::IterationCap(format!("no m found below {}", 2 * d + 1_000_000)))
}

/// Exponent vectors of coefficient monomials in free generators; contains the zero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialFamily {
    pub gens: usize,
    pub vectors: Vec<Vec<i64>>,
}

impl MonomialFamily {
    pub fn new(gens: usize, mut vectors: Vec<Vec<i64>>) -> Result<MonomialFamily> {
        if vectors.iter().any(|v| v.len() != gens) {
            return Err(Error::InvalidInput("exponent vector length differs from generator count".into()));
        }
        let zero = vec![0; gens];
        if !vectors.contains(&zero) {
            vectors.push(zero);
        }
        vectors.sort();
        vectors.dedup();
        Ok(MonomialFamily { gens, vectors })
    }

    /// `{0, e_1, ..., e_k}`.
    pub fn simplex(gens: usize) -> MonomialFamily {
        let mut v = vec![vec![0; gens]];
        for i in 0..gens {
            let mut e = vec![0; gens];
            e[i] = 1;
            v.push(e);
        }
        MonomialFamily::new(gens, v).unwrap()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MonomialFamily> {
        let gens = v["gens"].as_u64().ok_or_else(|| Error::Parse("family needs `gens`".into()))? as usize;
        let vecs: Vec<Vec<i64>> = serde_json::from_value(v["vectors"].clone())?;
        MonomialFamily::new(gens, vecs)
    }

    /// Dimension of the lattice spanned by the vectors.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigRational>> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.gens {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && !rows[i][col].is_zero() {
                    let f = &rows[i][col] / &rows[rank][col];
                    for j in 0..self.gens {
                        let t = &rows[rank][j] * &f;
                        rows[i][j] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Sizes of the `t`-fold sumsets for `t = 0..=t_max`, stopping early once the sumset exceeds `size_cap`.
pub fn sumset_sizes(fam: &MonomialFamily, t_max: u64, size_cap: usize) -> Vec<u64> {
    let mut c = SumsetCounter::with_cap(fam.clone(), size_cap);
    c.enumerate_to(t_max);
    c.sizes
}

const EXACT_CAP: usize = 200_000;

/// Exact Lagrange interpolation through `(x_i, y_i)` evaluated at `t`.
fn lagrange(xs: &[i64], ys: &[BigInt], t: &BigInt) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..xs.len() {
        let mut term = BigRational::from_integer(ys[i].clone());
        for j in 0..xs.len() {
            if i != j {
                term = term * BigRational::new(t - BigInt::from(xs[j]), BigInt::from(xs[i] - xs[j]));
            }
        }
        acc += term;
    }
    acc
}

/// Incremental `d_t` evaluator.
///
/// Since the family contains zero, `S_{t+1} = S_t + A` equals `S_t` together with the
/// translates of the newest layer, so each step only touches the new points. Beyond the
/// enumeration budget the count is a polynomial in `t` of degree equal to the rank of the
/// family; it is interpolated from the last enumerated values and checked against extra
/// enumerated points before use.
pub struct SumsetCounter {
    fam: MonomialFamily,
    cap: usize,
    sizes: Vec<u64>,
    all: HashSet<Vec<i64>>,
    layer: Vec<Vec<i64>>,
    fit: Option<(Vec<i64>, Vec<BigInt>)>,
}

impl SumsetCounter {
    pub fn new(fam: MonomialFamily) -> SumsetCounter {
        SumsetCounter::with_cap(fam, EXACT_CAP)
    }

    pub fn with_cap(fam: MonomialFamily, cap: usize) -> SumsetCounter {
        let zero = vec![0; fam.gens];
        SumsetCounter { fam, cap, sizes: vec![1], all: HashSet::from([zero.clone()]), layer: vec![zero], fit: None }
    }

    fn enumerate_to(&mut self, t: u64) {
        while (self.sizes.len() as u64) <= t && self.all.len() <= self.cap {
            let mut next = Vec::new();
            for s in &self.layer {
                for v in &self.fam.vectors {
                    let p: Vec<i64> = s.iter().zip(v).map(|(a, b)| a + b).collect();
                    if !self.all.contains(&p) {
                        self.all.insert(p.clone());
                        next.push(p);
                    }
                }
            }
            self.layer = next;
            self.sizes.push(self.all.len() as u64);
        }
    }

    fn fitted(&mut self) -> Result<&(Vec<i64>, Vec<BigInt>)> {
        if self.fit.is_none() {
            let deg = self.fam.rank();
            let have = self.sizes.len();
            let need = deg + 1 + 3;
            if have < need {
                return Err(Error::IterationCap(format!("enumeration budget exhausted after t = {}", have - 1)));
            }
            let xs: Vec<i64> = (have - need..have - 3).map(|i| i as i64).collect();
            let ys: Vec<BigInt> = xs.iter().map(|&i| BigInt::from(self.sizes[i as usize])).collect();
            for i in have - 3..have {
                if lagrange(&xs, &ys, &BigInt::from(i)) != BigRational::from_integer(BigInt::from(self.sizes[i])) {
                    return Err(Error::IterationCap(format!("sumset sizes not yet polynomial at t = {i}")));
                }
            }
            self.fit = Some((xs, ys));
        }
        Ok(self.fit.as_ref().unwrap())
    }

    pub fn get(&mut self, t: u64) -> Result<BigInt> {
        self.enumerate_to(t);
        if let Some(&s) = self.sizes.get(t as usize) {
            return Ok(BigInt::from(s));
        }
        let (xs, ys) = self.fitted()?;
        let v = lagrange(xs, ys, &BigInt::from(t));
        if !v.is_integer() {
            return Err(Error::InternalContradiction("interpolated dimension is not an integer".into()));
        }
        Ok(v.to_integer())
    }
}

/// `d_t`: the number of distinct products of `t` family members.
pub fn dim_vt(fam: &MonomialFamily, t: u64) -> Result<BigInt> {
    SumsetCounter::new(fam.clone()).get(t)
}

/// Smallest `b >= 1` with `w/u - 1 <= eps/(4mn)`, `w = d_{Mb}`, `u = d_{Mb - M}`.
pub fn choose_b(eps: &BigRational, m: u32, n: u32, big_m: &BigInt, fam: &MonomialFamily, cap: u64) -> Result<(u64, BigInt, BigInt)> {
    let big_m = big_m.to_u64().ok_or_else(|| Error::InvalidInput("M too large".into()))?;
    let bound = eps / BigRational::from_integer(BigInt::from(4 * m as u64 * n as u64));
    let mut counter = SumsetCounter::new(fam.clone());
    for b in 1..=cap {
        let w = counter.get(big_m * b)?;
        let u = counter.get(big_m * b - big_m)?;
        let ratio = BigRational::new(w.clone(), u.clone()) - BigRational::one();
        if ratio <= bound {
            return Ok((b, w, u));
        }
    }
    Err(Error::IterationCap(format!("no b <= {cap} meets the ratio bound; the family may grow too fast")))
}

/// Least integer strictly greater than `4((n+1) m L + c3/M) / eps`.
pub fn choose_n(eps: &BigRational, n: u32, m: u32, big_l: &BigInt, big_m: &BigInt, c3: &BigRational) -> Result<BigInt> {
    if !eps.is_positive() || !big_m.is_positive() || c3.is_negative() {
        return Err(Error::InvalidInput("eps, M must be positive and c3 non-negative".into()));
    }
    let base = rat(&(BigInt::from((n as u64 + 1) * m as u64) * big_l)) + c3 / rat(big_m);
    let v = BigRational::from_integer(BigInt::from(4)) * base / eps;
    Ok(v.floor().to_integer() + BigInt::one())
}

/// Full profile: `m` from `eps`, then `b` (when a family is given) and `N`.
pub fn full_profile(eps: &BigRational, n: u32, d: u32, fam: Option<&MonomialFamily>, c3: Option<&BigRational>) -> Result<ConstantsProfile> {
    let m = choose_m(eps, n, d)?;
    let mut p = constants(n, d, m)?;
    p.eps = Some(eps.clone());
    if let Some(f) = fam {
        let (b, w, u) = choose_b(eps, m, n, &p.big_m, f, 100_000)?;
        p.b = Some(b);
        p.w = Some(w);
        p.u = Some(u);
    }
    if let Some(c3) = c3 {
        p.n_threshold = Some(choose_n(eps, n, m, &p.big_l, &p.big_m, c3)?);
        p.c3 = Some(c3.clone());
    }
    Ok(p)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    crate::algebra::gauss::parse_rat(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn worked_profile() {
        let p = constants(2, 2, 4).unwrap();
        assert_eq!(p.big_m, BigInt::from(11));
        assert_eq!(p.c_mnd, BigInt::from(8));
        assert_eq!(p.m_prime, BigInt::from(4));
        assert_eq!(p.big_l, BigInt::from(7));
    }

    #[test]
    fn boundary_binomial() {
        assert_eq!(binom(2, 2), BigInt::one());
        assert_eq!(binom(2, 3), BigInt::zero());
        assert_eq!(binom(-1, 2), BigInt::zero());
        assert!(constants(2, 2, 3).is_err());
    }

    #[test]
    fn choose_m_half() {
        assert_eq!(choose_m(&q(1, 2), 2, 1).unwrap(), 29);
        assert_eq!(choose_m(&q(1000, 1), 2, 1).unwrap(), 2);
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(dim_vt(&MonomialFamily::new(1, vec![]).unwrap(), 9).unwrap(), BigInt::one());
        let line = MonomialFamily::simplex(1);
        assert_eq!(dim_vt(&line, 7).unwrap(), BigInt::from(8));
        assert_eq!(dim_vt(&MonomialFamily::simplex(2), 2).unwrap(), BigInt::from(6));
    }

    #[test]
    fn extrapolated_dimension() {
        let fam = MonomialFamily::simplex(2);
        let t = 100_000u64;
        assert_eq!(dim_vt(&fam, t).unwrap(), binom(t as i64 + 2, 2));
    }

    #[test]
    fn choose_b_line() {
        let fam = MonomialFamily::simplex(1);
        let (b, w, u) = choose_b(&q(1, 2), 29, 2, &BigInt::from(10), &fam, 100_000).unwrap();
        // (10b + 1)/(10b - 9) - 1 = 10/(10b - 9) <= 1/464
        assert_eq!(b, 465);
        assert_eq!(w, BigInt::from(4651));
        assert_eq!(u, BigInt::from(4641));
        let (b0, _, _) = choose_b(&q(1, 2), 29, 2, &BigInt::from(10), &MonomialFamily::new(1, vec![]).unwrap(), 10).unwrap();
        assert_eq!(b0, 1);
    }

    #[test]
    fn n_threshold() {
        let p = constants(2, 1, 29).unwrap();
        let n0 = choose_n(&q(1, 2), 2, 29, &p.big_l, &p.big_m, &BigRational::zero()).unwrap();
        let expect = BigInt::from(8 * 3 * 29) * &p.big_l + BigInt::one();
        assert_eq!(n0, expect);
    }
}
