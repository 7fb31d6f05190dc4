//! Normal- and anti-normal-ordered polynomials in `a`, `a†`.
//!
//! Both orderings are keyed by [`Monomial`] `(a†-power, a-power)`:
//! a normal term is `a†^m a^n`, an anti-normal term is `a^n a†^m`. With this
//! keying the Q-symbol of a normal form and the P-symbol of an anti-normal
//! form are read off the same way (`a → α`, `a† → α*`), and an operator is
//! well ordered exactly when its two coefficient maps coincide.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::expr::{ExprNode, Symbol};
use super::scalar::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    /// Power of `a†`.
    pub adag: u32,
    /// Power of `a`.
    pub a: u32,
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial { adag: 0, a: 0 };

    pub fn new(adag: u32, a: u32) -> Self {
        Self { adag, a }
    }

    pub fn degree(self) -> u32 {
        self.adag + self.a
    }

    fn swapped(self) -> Self {
        Self {
            adag: self.a,
            a: self.adag,
        }
    }
}

/// Descending total degree, then descending `a†`-power.
fn canonical_order(terms: &BTreeMap<Monomial, Scalar>) -> Vec<(&Monomial, &Scalar)> {
    let mut v: Vec<_> = terms.iter().collect();
    v.sort_by(|(x, _), (y, _)| y.degree().cmp(&x.degree()).then(y.adag.cmp(&x.adag)));
    v
}

fn insert(terms: &mut BTreeMap<Monomial, Scalar>, key: Monomial, c: Scalar) {
    if scalar::is_zero(&c) {
        return;
    }
    let slot = terms.entry(key).or_insert_with(Scalar::zero);
    *slot += c;
    if scalar::is_zero(slot) {
        terms.remove(&key);
    }
}

/// `s! C(m, s) C(n, s)`.
pub fn reorder_coefficient(m: u32, n: u32, s: u32) -> BigInt {
    let fact = |k: u32| (1..=k).fold(BigInt::one(), |acc, j| acc * j);
    let binom = |n: u32, k: u32| fact(n) / (fact(k) * fact(n - k));
    fact(s) * binom(m, s) * binom(n, s)
}

/// `a^m a†^n = Σ_s s! C(m,s) C(n,s) a†^{n−s} a^{m−s}`.
pub fn antinormal_monomial_to_normal(m: u32, n: u32) -> NormalPolynomial {
    let mut terms = BTreeMap::new();
    for s in 0..=m.min(n) {
        let c = scalar::from_rational(reorder_coefficient(m, n, s).into());
        insert(&mut terms, Monomial::new(n - s, m - s), c);
    }
    NormalPolynomial { terms }
}

/// `a†^m a^n = Σ_s (−1)^s s! C(m,s) C(n,s) a^{n−s} a†^{m−s}`.
pub fn normal_monomial_to_antinormal(m: u32, n: u32) -> AntiNormalPolynomial {
    let mut terms = BTreeMap::new();
    for s in 0..=m.min(n) {
        let mut c: BigInt = reorder_coefficient(m, n, s);
        if s % 2 == 1 {
            c = -c;
        }
        insert(&mut terms, Monomial::new(m - s, n - s), scalar::from_rational(c.into()));
    }
    AntiNormalPolynomial { terms }
}

/// `Σ β a†^m a^n`, exact coefficients, no stored zeros.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NormalPolynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

/// `Σ β a^n a†^m`, keyed by `(m, n)` as for [`NormalPolynomial`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AntiNormalPolynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

/// Polynomial in `α*`, `α`: key `(power of α*, power of α)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PhaseSpacePolynomial {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl PhaseSpacePolynomial {
    pub fn evaluate(&self, alpha: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                scalar::to_complex64(c) * alpha.conj().powu(k.adag) * alpha.powu(k.a)
            })
            .sum()
    }
}

impl NormalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::monomial(0, 0, Scalar::one())
    }

    /// `c · a†^adag a^a`.
    pub fn monomial(adag: u32, a: u32, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        insert(&mut terms, Monomial::new(adag, a), c);
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in iter {
            insert(&mut terms, k, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, adag: u32, a: u32) -> Scalar {
        self.terms
            .get(&Monomial::new(adag, a))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            insert(&mut terms, *k, c.clone());
        }
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Operator product, renormalized with `a^n a†^p = Σ_s s! C(n,s) C(p,s) a†^{p−s} a^{n−s}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let c = c1 * c2;
                for s in 0..=k1.a.min(k2.adag) {
                    let w = scalar::from_rational(reorder_coefficient(k1.a, k2.adag, s).into());
                    let key = Monomial::new(k1.adag + k2.adag - s, k1.a + k2.a - s);
                    insert(&mut terms, key, &c * w);
                }
            }
        }
        Self { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Operator adjoint: `(c a†^m a^n)† = c* a†^n a^m`.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (k.swapped(), c.conj())))
    }

    /// `β_{(m,n)} = conj β_{(n,m)}` for every key.
    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    /// Q-symbol `⟨α|B|α⟩`: substitute `a → α`, `a† → α*`.
    pub fn q_symbol(&self) -> PhaseSpacePolynomial {
        PhaseSpacePolynomial {
            terms: self.terms.clone(),
        }
    }

    pub fn to_expr(&self) -> ExprNode {
        let mut acc: Option<ExprNode> = None;
        for (k, c) in canonical_order(&self.terms) {
            let mono = monomial_expr(&[(Symbol::Ad, k.adag), (Symbol::A, k.a)]);
            let term = match mono {
                None => ExprNode::scalar(c.clone()),
                Some(m) => ExprNode::mul(ExprNode::scalar(c.clone()), m),
            };
            acc = Some(match acc {
                None => term,
                Some(a) => ExprNode::add(a, term),
            });
        }
        acc.unwrap_or_else(|| ExprNode::scalar(Scalar::zero()))
    }
}

impl AntiNormalPolynomial {
    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in iter {
            insert(&mut terms, k, c);
        }
        Self { terms }
    }

    /// Coefficient of `a^a a†^adag`.
    pub fn coefficient(&self, adag: u32, a: u32) -> Scalar {
        self.terms
            .get(&Monomial::new(adag, a))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// P-symbol: substitute `a → α`, `a† → α*` in the anti-normal form.
    pub fn p_symbol(&self) -> PhaseSpacePolynomial {
        PhaseSpacePolynomial {
            terms: self.terms.clone(),
        }
    }

    /// Back to normal order.
    pub fn to_normal(&self) -> NormalPolynomial {
        let mut acc = NormalPolynomial::zero();
        for (k, c) in &self.terms {
            acc = acc.add(&antinormal_monomial_to_normal(k.a, k.adag).scale(c));
        }
        acc
    }
}

fn monomial_expr(factors: &[(Symbol, u32)]) -> Option<ExprNode> {
    let mut acc: Option<ExprNode> = None;
    for &(sym, power) in factors {
        let f = match power {
            0 => continue,
            1 => ExprNode::symbol(sym),
            n => ExprNode::pow(ExprNode::symbol(sym), n),
        };
        acc = Some(match acc {
            None => f,
            Some(a) => ExprNode::mul(a, f),
        });
    }
    acc
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<Monomial, Scalar>,
    factors: impl Fn(&Monomial) -> Vec<(&'static str, u32)>,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (idx, (k, c)) in canonical_order(terms).into_iter().enumerate() {
        let mono: Vec<String> = factors(k)
            .into_iter()
            .filter(|(_, p)| *p > 0)
            .map(|(s, p)| if p == 1 { s.to_string() } else { format!("{s}^{p}") })
            .collect();
        let mono = mono.join("*");
        let coeff = scalar::format_scalar(c);
        let text = if mono.is_empty() {
            coeff
        } else if c.is_one() {
            mono
        } else if *c == -Scalar::one() {
            format!("-{mono}")
        } else {
            format!("{coeff}*{mono}")
        };
        match (idx, text.strip_prefix('-')) {
            (0, _) => f.write_str(&text)?,
            (_, Some(rest)) => write!(f, " - {rest}")?,
            (_, None) => write!(f, " + {text}")?,
        }
    }
    Ok(())
}

impl fmt::Display for NormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |k| vec![("ad", k.adag), ("a", k.a)])
    }
}

impl fmt::Display for AntiNormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |k| vec![("a", k.a), ("ad", k.adag)])
    }
}

fn symbol_polynomial(sym: Symbol) -> NormalPolynomial {
    let half = scalar::real(1, 2);
    match sym {
        Symbol::A => NormalPolynomial::monomial(0, 1, Scalar::one()),
        Symbol::Ad => NormalPolynomial::monomial(1, 0, Scalar::one()),
        Symbol::Id => NormalPolynomial::identity(),
        // (a + a†)/2
        Symbol::Q => NormalPolynomial::from_terms([
            (Monomial::new(0, 1), half.clone()),
            (Monomial::new(1, 0), half),
        ]),
        // (a − a†)/2i = −(i/2) a + (i/2) a†
        Symbol::P => {
            let i_half = scalar::imag_unit() * half;
            NormalPolynomial::from_terms([
                (Monomial::new(0, 1), -i_half.clone()),
                (Monomial::new(1, 0), i_half),
            ])
        }
    }
}

/// Exact normal form of an expression.
pub fn normal_order(e: &ExprNode) -> NormalPolynomial {
    match e {
        ExprNode::Scalar(z) => NormalPolynomial::monomial(0, 0, z.clone()),
        ExprNode::Symbol(s) => symbol_polynomial(*s),
        ExprNode::Add(l, r) => normal_order(l).add(&normal_order(r)),
        ExprNode::Sub(l, r) => normal_order(l).sub(&normal_order(r)),
        ExprNode::Mul(l, r) => normal_order(l).mul(&normal_order(r)),
        ExprNode::Neg(x) => normal_order(x).neg(),
        ExprNode::Pow(x, n) => normal_order(x).pow(*n),
    }
}

/// Exact anti-normal form of a normal-ordered polynomial.
pub fn anti_normal_order(p: &NormalPolynomial) -> AntiNormalPolynomial {
    let mut terms = BTreeMap::new();
    for (k, c) in &p.terms {
        for (k2, c2) in normal_monomial_to_antinormal(k.adag, k.a).terms {
            insert(&mut terms, k2, c * c2);
        }
    }
    AntiNormalPolynomial { terms }
}

/// Lüders map: `a†^m a^n ↦ a^n a†^m`, renormalized.
pub fn luders_symbolic(p: &NormalPolynomial) -> NormalPolynomial {
    AntiNormalPolynomial {
        terms: p.terms.clone(),
    }
    .to_normal()
}

/// Normal and anti-normal coefficient families coincide.
pub fn is_well_ordered(p: &NormalPolynomial) -> bool {
    anti_normal_order(p).terms == p.terms
}
