//! Integer polynomials in `N` and reduced rational functions built from them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `N`
    pub fn var() -> Self {
        Self::new(vec![BigInt::zero(), BigInt::one()])
    }

    /// `N − r`
    pub fn linear_root(r: i64) -> Self {
        Self::new(vec![BigInt::from(-r), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::constant(1), |acc, _| &acc * self)
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale_down(&self, d: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c / d).collect())
    }

    fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.scale_down(&c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Poly) -> Poly {
        let lc = divisor.leading();
        let d = divisor.degree();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let lr = r.leading();
            let mut sub = vec![BigInt::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|c| c * &lr));
            r = &r.scale(&lc) - &Poly::new(sub);
        }
        r
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self` over the integers.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let lc = divisor.leading();
        let d = divisor.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - d + 1];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + d];
            if top.is_zero() {
                continue;
            }
            let (quot, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &quot * c;
            }
            q[shift] = quot;
        }
        r.iter().all(Zero::is_zero).then(|| Poly::new(q))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// Splits off linear factors `(N − r)` with small integer roots.
    /// Returns `(roots with multiplicity, ascending; cofactor)`.
    pub fn linear_factors(&self) -> (Vec<i64>, Poly) {
        let mut roots = Vec::new();
        let mut rest = self.clone();
        if rest.is_zero() {
            return (roots, rest);
        }
        for r in std::iter::once(0).chain((1..=64).flat_map(|r| [r, -r])) {
            while rest.degree() > 0 {
                match rest.div_exact(&Poly::linear_root(r)) {
                    Some(q) => {
                        roots.push(r);
                        rest = q;
                    }
                    None => break,
                }
            }
        }
        roots.sort_unstable();
        (roots, rest)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = p == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
                if p > 0 && !latex {
                    write!(f, "*")?;
                }
            }
            match p {
                0 => {}
                1 => write!(f, "N")?,
                _ if latex => write!(f, "N^{{{p}}}")?,
                _ => write!(f, "N^{p}")?,
            }
        }
        Ok(())
    }

    pub fn to_latex(&self) -> String {
        struct L<'a>(&'a Poly);
        impl fmt::Display for L<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, true)
            }
        }
        L(self).to_string()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        + rhs.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// `num / den` over the integers in lowest terms: polynomial gcd 1, integer
/// contents coprime, leading coefficient of `den` positive. Zero is `0/1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Returns `None` when `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_negative() {
            c = -c;
        }
        num = num.scale_down(&c);
        den = den.scale_down(&c);
        Some(Self { num, den })
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::constant(1),
        }
    }

    pub fn from_integer(c: impl Into<BigInt>) -> Self {
        Self::new(Poly::constant(c), Poly::constant(1)).expect("nonzero denominator")
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, Poly::constant(1)).expect("nonzero denominator")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at `N = n`, or `None` at a pole.
    pub fn eval(&self, n: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(n);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(n) / d)
    }

    pub fn eval_int(&self, n: i64) -> Option<BigRational> {
        self.eval(&BigRational::from_integer(n.into()))
    }

    /// `true` when the leading numerator coefficient is negative.
    pub fn is_negative_leading(&self) -> bool {
        self.num.leading().is_negative()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0
    }

    /// Plain text, e.g. `2*N^2/((N - 1)*(N - 2))`.
    pub fn to_plain(&self) -> String {
        if self.den == Poly::constant(1) {
            return self.num.to_string();
        }
        let (num, num_factored) = factored(&self.num, false);
        let (den, _) = factored(&self.den, false);
        let num = if !num_factored && num.contains(' ') {
            format!("({num})")
        } else {
            num
        };
        let den = if den.contains(' ') || den.contains('*') {
            format!("({den})")
        } else {
            den
        };
        format!("{num}/{den}")
    }

    pub fn to_latex(&self) -> String {
        let (num, _) = factored(&self.num, true);
        if self.den == Poly::constant(1) {
            return num;
        }
        format!("\\frac{{{}}}{{{}}}", num, factored(&self.den, true).0)
    }
}

/// Renders a polynomial as a product of its small-root linear factors and
/// whatever cofactor remains. The flag reports whether a product was produced.
fn factored(p: &Poly, latex: bool) -> (String, bool) {
    let (roots, rest) = p.linear_factors();
    if roots.is_empty() || (roots.len() == 1 && rest.degree() == 0) {
        return (if latex { p.to_latex() } else { p.to_string() }, false);
    }
    let mut parts: Vec<String> = Vec::new();
    let lead = rest.leading();
    let mut prefix = "";
    if rest.degree() > 0 {
        let s = if latex {
            rest.to_latex()
        } else {
            rest.to_string()
        };
        parts.push(format!("({s})"));
    } else if lead == BigInt::from(-1) {
        prefix = "-";
    } else if !lead.is_one() {
        parts.push(lead.to_string());
    }
    let mut i = 0;
    while i < roots.len() {
        let r = roots[i];
        let mult = roots[i..].iter().take_while(|&&x| x == r).count();
        let base = match r.cmp(&0) {
            Ordering::Equal => "N".to_string(),
            Ordering::Greater => format!("(N - {r})"),
            Ordering::Less => format!("(N + {})", -r),
        };
        parts.push(match (mult, latex) {
            (1, _) => base,
            (m, true) => format!("{base}^{{{m}}}"),
            (m, false) => format!("{base}^{m}"),
        });
        i += mult;
    }
    (
        format!("{prefix}{}", parts.join(if latex { "" } else { "*" })),
        true,
    )
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (N-1)(N-2) and 2(N-1)(N+3)
        let a = &Poly::linear_root(1) * &Poly::linear_root(2);
        let b = &(&Poly::linear_root(1) * &Poly::linear_root(-3)) * &Poly::constant(2);
        assert_eq!(a.gcd(&b), Poly::linear_root(1));
        assert_eq!(p(&[3]).gcd(&p(&[6])), p(&[1]));
    }

    #[test]
    fn exact_division() {
        let a = &Poly::linear_root(1) * &Poly::linear_root(2);
        assert_eq!(
            a.div_exact(&Poly::linear_root(2)).unwrap(),
            Poly::linear_root(1)
        );
        assert!(a.div_exact(&Poly::linear_root(3)).is_none());
        assert!(p(&[1, 2]).div_exact(&p(&[0, 2])).is_none());
    }

    #[test]
    fn reduction_is_canonical() {
        // N(N-1) / (-(N-1)(N-1)) -> -N/(N-1)
        let num = &Poly::var() * &Poly::linear_root(1);
        let den = -&(&Poly::linear_root(1) * &Poly::linear_root(1));
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r.num(), &p(&[0, -1]));
        assert_eq!(r.den(), &p(&[-1, 1]));
        // 2N / 4 -> N / 2
        let half = RationalFunction::new(p(&[0, 2]), p(&[4])).unwrap();
        assert_eq!(half.num(), &p(&[0, 1]));
        assert_eq!(half.den(), &p(&[2]));
        assert!(RationalFunction::new(p(&[1]), Poly::zero()).is_none());
    }

    #[test]
    fn arithmetic_and_evaluation() {
        // 1 + 1/(N-1) = N/(N-1)
        let one = RationalFunction::from_integer(1);
        let inv = RationalFunction::new(p(&[1]), Poly::linear_root(1)).unwrap();
        let sum = &one + &inv;
        assert_eq!(
            sum,
            RationalFunction::new(Poly::var(), Poly::linear_root(1)).unwrap()
        );
        assert_eq!(
            sum.eval_int(10).unwrap(),
            BigRational::new(10.into(), 9.into())
        );
        assert!(sum.eval_int(1).is_none());
        assert!((&sum + &(-&sum)).is_zero());
    }

    #[test]
    fn rendering() {
        let f = RationalFunction::new(
            &Poly::var().pow(2) * &Poly::constant(2),
            &Poly::linear_root(1) * &Poly::linear_root(2),
        )
        .unwrap();
        assert_eq!(f.to_plain(), "2*N^2/((N - 1)*(N - 2))");
        assert_eq!(f.to_latex(), "\\frac{2N^{2}}{(N - 1)(N - 2)}");
        let g = RationalFunction::new(Poly::var(), Poly::linear_root(1)).unwrap();
        assert_eq!(g.to_plain(), "N/(N - 1)");
        assert_eq!(g.to_latex(), "\\frac{N}{N - 1}");
        assert_eq!(RationalFunction::from_integer(-3).to_plain(), "-3");
        assert_eq!(p(&[2, -3, 1]).to_string(), "N^2 - 3*N + 2");
    }
}
