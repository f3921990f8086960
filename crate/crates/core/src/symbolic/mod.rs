//! Exact symbolic formulas over the partition lattice.
//!
//! Three kinds of formula are produced, all as linear combinations of
//! products of moment (or cumulant) symbols:
//!
//! - a cumulant in terms of raw moments, with integer coefficients
//!   `(−1)^{|π|−1}(|π|−1)!`;
//! - a raw moment in terms of cumulants, with coefficient 1 per partition;
//! - a k-statistic in terms of raw sample moments, with coefficients that are
//!   rational functions of the sample size `N`.
//!
//! Terms for partitions that select the same product of symbols are merged,
//! which is where multiplicity constants such as the `3` in `3 m̂₁m̂₂` come
//! from when indices repeat.

pub mod poly;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::combinatorics::{enumerate_set_partitions, factorial, stirling2, BlockSizeProfile};
use crate::error::{Error, Result};
use crate::moments::{IndexMultiset, MomentTable, NeumaierSum};
pub use poly::{Poly, RationalFunction};

/// Highest order accepted by the formula builders (`Bell(8)` = 4140 partitions).
pub const SYMBOLIC_MAX_ORDER: usize = 8;

/// What a formula's symbols stand for and what it computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaKind {
    /// k-statistic in terms of raw sample moments `m̂`.
    KStat,
    /// Cumulant in terms of raw moments `m`.
    Cumulant,
    /// Raw moment in terms of cumulants `κ`.
    Moment,
}

impl FormulaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FormulaKind::KStat => "kstat",
            FormulaKind::Cumulant => "cumulant",
            FormulaKind::Moment => "moment",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "kstat" => Some(FormulaKind::KStat),
            "cumulant" => Some(FormulaKind::Cumulant),
            "moment" => Some(FormulaKind::Moment),
            _ => None,
        }
    }

    fn plain_symbol(self) -> &'static str {
        match self {
            FormulaKind::KStat => "mhat",
            FormulaKind::Cumulant => "m",
            FormulaKind::Moment => "kappa",
        }
    }

    fn latex_symbol(self) -> &'static str {
        match self {
            FormulaKind::KStat => "\\hat m",
            FormulaKind::Cumulant => "m",
            FormulaKind::Moment => "\\kappa",
        }
    }
}

/// A single moment or cumulant symbol, named by its index multiset.
pub type MomentSymbol = IndexMultiset;

/// A product of symbols, kept sorted by (order, indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MomentProduct {
    factors: Vec<MomentSymbol>,
}

impl MomentProduct {
    pub fn new(mut factors: Vec<MomentSymbol>) -> Self {
        factors.sort_by(symbol_order);
        Self { factors }
    }

    pub fn factors(&self) -> &[MomentSymbol] {
        &self.factors
    }

    /// Sum of factor orders.
    pub fn order(&self) -> usize {
        self.factors.iter().map(IndexMultiset::order).sum()
    }

    pub fn profile(&self) -> BlockSizeProfile {
        BlockSizeProfile::new(self.factors.iter().map(IndexMultiset::order).collect())
            .expect("non-empty product")
    }

    fn times(&self, other: &MomentProduct) -> MomentProduct {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        MomentProduct::new(factors)
    }
}

fn symbol_order(a: &MomentSymbol, b: &MomentSymbol) -> Ordering {
    a.order()
        .cmp(&b.order())
        .then_with(|| a.indices().cmp(b.indices()))
}

impl Ord for MomentProduct {
    /// Fewer factors first, then larger blocks first, then symbol order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors
            .len()
            .cmp(&other.factors.len())
            .then_with(|| other.profile().cmp(&self.profile()))
            .then_with(|| {
                for (a, b) in self.factors.iter().zip(&other.factors) {
                    match symbol_order(a, b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for MomentProduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A linear combination of symbol products with rational-function coefficients.
/// Integer-coefficient formulas store constant rational functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    kind: FormulaKind,
    idx: IndexMultiset,
    terms: BTreeMap<MomentProduct, RationalFunction>,
}

impl Formula {
    fn empty(kind: FormulaKind, idx: IndexMultiset) -> Self {
        Self {
            kind,
            idx,
            terms: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> FormulaKind {
        self.kind
    }

    pub fn index(&self) -> &IndexMultiset {
        &self.idx
    }

    pub fn order(&self) -> usize {
        self.idx.order()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MomentProduct, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, product: &MomentProduct) -> Option<&RationalFunction> {
        self.terms.get(product)
    }

    /// Adds `coeff · product`, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, product: MomentProduct, coeff: RationalFunction) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&product) {
            Some(existing) => {
                let sum = &*existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&product);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(product, coeff);
            }
        }
    }

    /// Replaces every symbol `s` with the formula `expand(s)` and expands.
    /// The result takes its kind from the substituted formulas.
    pub fn substitute(
        &self,
        kind: FormulaKind,
        mut expand: impl FnMut(&MomentSymbol) -> Result<Formula>,
    ) -> Result<Formula> {
        let mut memo: HashMap<MomentSymbol, Formula> = HashMap::new();
        let mut out = Formula::empty(kind, self.idx.clone());
        for (product, coeff) in &self.terms {
            let mut acc: Vec<(MomentProduct, RationalFunction)> =
                vec![(MomentProduct::new(Vec::new()), coeff.clone())];
            for symbol in &product.factors {
                if !memo.contains_key(symbol) {
                    memo.insert(symbol.clone(), expand(symbol)?);
                }
                let sub = &memo[symbol];
                let mut next = Vec::with_capacity(acc.len() * sub.terms.len());
                for (p, c) in &acc {
                    for (q, d) in &sub.terms {
                        next.push((p.times(q), c * d));
                    }
                }
                acc = next;
            }
            for (p, c) in acc {
                out.add_term(p, c);
            }
        }
        Ok(out)
    }
}

fn check_symbolic_order(idx: &IndexMultiset) -> Result<()> {
    if idx.order() > SYMBOLIC_MAX_ORDER {
        return Err(Error::OrderAboveCap {
            order: idx.order(),
            cap: SYMBOLIC_MAX_ORDER,
        });
    }
    Ok(())
}

/// Visits each partition of `{1..k}` with its block count and block symbols.
fn for_each_partition(
    idx: &IndexMultiset,
    mut visit: impl FnMut(usize, MomentProduct),
) -> Result<()> {
    let mut stream = enumerate_set_partitions(idx.order())?;
    while stream.advance() {
        let n_blocks = stream.n_blocks();
        let mut blocks = vec![Vec::new(); n_blocks];
        for (j, &label) in stream.labels().iter().enumerate() {
            blocks[label as usize].push(j);
        }
        let product = MomentProduct::new(blocks.iter().map(|b| idx.select(b)).collect());
        visit(n_blocks, product);
    }
    Ok(())
}

/// The cumulant-from-moments terms before merging, one per partition, in
/// enumeration order.
pub fn cumulant_from_moments_terms(idx: &IndexMultiset) -> Result<Vec<(MomentProduct, BigInt)>> {
    check_symbolic_order(idx)?;
    let mut out = Vec::new();
    for_each_partition(idx, |n_blocks, product| {
        let mag = BigInt::from(factorial(n_blocks - 1));
        out.push((product, if n_blocks % 2 == 1 { mag } else { -mag }));
    })?;
    Ok(out)
}

/// `κ_idx = Σ_π (−1)^{|π|−1}(|π|−1)! Π_B m_B`, merged.
pub fn cumulant_from_moments_formula(idx: &IndexMultiset) -> Result<Formula> {
    let mut f = Formula::empty(FormulaKind::Cumulant, idx.clone());
    for (product, c) in cumulant_from_moments_terms(idx)? {
        f.add_term(product, RationalFunction::from_integer(c));
    }
    Ok(f)
}

/// `m_idx = Σ_π Π_B κ_B`, merged.
pub fn moments_from_cumulants_formula(idx: &IndexMultiset) -> Result<Formula> {
    check_symbolic_order(idx)?;
    let mut f = Formula::empty(FormulaKind::Moment, idx.clone());
    let one = RationalFunction::from_integer(1);
    for_each_partition(idx, |_, product| f.add_term(product, one.clone()))?;
    Ok(f)
}

/// `c_π(N)` as a rational function, summed term by term over every tuple
/// `(b_1..b_|π|)` with `1 ≤ b_j ≤ |B_j|`.
pub fn symbolic_coefficient(profile: &BlockSizeProfile) -> RationalFunction {
    let sizes = profile.sizes();
    let mut b = vec![1usize; sizes.len()];
    let mut sum = RationalFunction::zero();
    loop {
        let total: usize = b.iter().sum();
        let mut weight = factorial(total - 1);
        for (&size, &bj) in sizes.iter().zip(&b) {
            weight *= stirling2(size, bj).expect("1 <= b_j <= |B_j|") * factorial(bj - 1);
        }
        let falling =
            (0..total as i64).fold(Poly::constant(1), |acc, i| &acc * &Poly::linear_root(i));
        let term =
            RationalFunction::new(Poly::constant(BigInt::from(weight)), falling).expect("nonzero");
        sum = &sum + &term;

        // odometer over the b tuple
        let mut pos = 0;
        loop {
            if pos == b.len() {
                let scale = RationalFunction::from_poly(Poly::var().pow(sizes.len() as u32));
                return &sum * &scale;
            }
            if b[pos] < sizes[pos] {
                b[pos] += 1;
                break;
            }
            b[pos] = 1;
            pos += 1;
        }
    }
}

/// k-statistic as `Σ_π (−1)^{|π|−1} c_π(N) Π_B m̂_B`, merged, with
/// coefficients as rational functions of `N`.
pub fn k_statistic_formula(idx: &IndexMultiset) -> Result<Formula> {
    check_symbolic_order(idx)?;
    let mut coeffs: HashMap<BlockSizeProfile, RationalFunction> = HashMap::new();
    let mut f = Formula::empty(FormulaKind::KStat, idx.clone());
    for_each_partition(idx, |n_blocks, product| {
        let profile = product.profile();
        let c = coeffs
            .entry(profile.clone())
            .or_insert_with(|| symbolic_coefficient(&profile));
        let signed = if n_blocks % 2 == 1 { c.clone() } else { -&*c };
        f.add_term(product, signed);
    })?;
    Ok(f)
}

/// Output style for [`render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    Plain,
    Latex,
    Json,
}

fn symbol_text(symbol: &MomentSymbol, kind: FormulaKind, latex: bool) -> String {
    let parts: Vec<String> = symbol.indices().iter().map(|i| i.to_string()).collect();
    if latex {
        format!("{}_{{[{}]}}", kind.latex_symbol(), parts.join(", "))
    } else {
        format!("{}[{}]", kind.plain_symbol(), parts.join(","))
    }
}

fn render_text(formula: &Formula, latex: bool) -> String {
    if formula.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (product, coeff)) in formula.terms.iter().enumerate() {
        let negative = coeff.is_negative_leading();
        let magnitude = if negative { -coeff } else { coeff.clone() };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let symbols: Vec<String> = product
            .factors
            .iter()
            .map(|s| symbol_text(s, formula.kind, latex))
            .collect();
        let body = symbols.join(if latex { " " } else { "*" });
        let unit = magnitude == RationalFunction::from_integer(1);
        if unit {
            out.push_str(&body);
        } else if latex {
            out.push_str(&format!("{} {}", magnitude.to_latex(), body));
        } else if magnitude.is_constant() && magnitude.den() == &Poly::constant(1) {
            out.push_str(&format!("{}*{}", magnitude.to_plain(), body));
        } else {
            out.push_str(&format!("({}) * {}", magnitude.to_plain(), body));
        }
    }
    out
}

fn int_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

/// JSON value following the documented formula schema.
pub fn to_json(formula: &Formula) -> Value {
    let terms: Vec<Value> = formula
        .terms
        .iter()
        .map(|(product, coeff)| {
            let factors: Vec<&[usize]> = product.factors.iter().map(|s| s.indices()).collect();
            json!({
                "product": factors,
                "coeff": {
                    "num": coeff.num().coeffs().iter().map(int_json).collect::<Vec<_>>(),
                    "den": coeff.den().coeffs().iter().map(int_json).collect::<Vec<_>>(),
                }
            })
        })
        .collect();
    json!({
        "kind": formula.kind.as_str(),
        "order": formula.order(),
        "index": formula.idx.indices(),
        "terms": terms,
    })
}

/// Renders deterministically in canonical term order.
pub fn render(formula: &Formula, style: RenderStyle) -> String {
    match style {
        RenderStyle::Plain => render_text(formula, false),
        RenderStyle::Latex => render_text(formula, true),
        RenderStyle::Json => to_json(formula).to_string(),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_text(self, false))
    }
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::FormulaParse(format!("non-integer coefficient {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| Error::FormulaParse(format!("bad integer {s:?}"))),
        other => Err(Error::FormulaParse(format!(
            "expected integer, got {other}"
        ))),
    }
}

fn parse_poly(v: &Value) -> Result<Poly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::FormulaParse("polynomial must be an array".into()))?;
    Ok(Poly::new(arr.iter().map(parse_int).collect::<Result<_>>()?))
}

fn parse_symbol(v: &Value) -> Result<MomentSymbol> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::FormulaParse("symbol must be an array".into()))?;
    let indices = arr
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| Error::FormulaParse(format!("bad index {x}")))
        })
        .collect::<Result<Vec<_>>>()?;
    IndexMultiset::new(indices)
}

/// Parses the JSON produced by [`render`] with [`RenderStyle::Json`].
/// `index` may be omitted; it is then recovered from the first term.
pub fn parse_json(text: &str) -> Result<Formula> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::FormulaParse(e.to_string()))?;
    let kind = v["kind"]
        .as_str()
        .and_then(FormulaKind::parse)
        .ok_or_else(|| Error::FormulaParse("missing or unknown kind".into()))?;
    let order = v["order"]
        .as_u64()
        .ok_or_else(|| Error::FormulaParse("missing order".into()))? as usize;
    let terms = v["terms"]
        .as_array()
        .ok_or_else(|| Error::FormulaParse("missing terms".into()))?;

    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let factors = t["product"]
            .as_array()
            .ok_or_else(|| Error::FormulaParse("term without product".into()))?
            .iter()
            .map(parse_symbol)
            .collect::<Result<Vec<_>>>()?;
        let coeff = RationalFunction::new(
            parse_poly(&t["coeff"]["num"])?,
            parse_poly(&t["coeff"]["den"])?,
        )
        .ok_or_else(|| Error::FormulaParse("zero denominator".into()))?;
        parsed.push((MomentProduct::new(factors), coeff));
    }

    let idx = match &v["index"] {
        Value::Null => {
            let (first, _) = parsed
                .first()
                .ok_or_else(|| Error::FormulaParse("cannot infer index".into()))?;
            IndexMultiset::new(
                first
                    .factors
                    .iter()
                    .flat_map(|s| s.indices().iter().copied())
                    .collect(),
            )?
        }
        other => parse_symbol(other)?,
    };
    if idx.order() != order {
        return Err(Error::FormulaParse(format!(
            "order {order} does not match index {idx}"
        )));
    }
    let mut f = Formula::empty(kind, idx);
    for (p, c) in parsed {
        if p.order() != order {
            return Err(Error::FormulaParse(format!(
                "term of order {} in formula of order {order}",
                p.order()
            )));
        }
        f.add_term(p, c);
    }
    Ok(f)
}

/// Numerical value of a formula with symbol values read from `table`.
///
/// For k-statistic formulas `n` is the sample size and must be at least the
/// order. Coefficients are evaluated exactly at `n` before conversion.
pub fn evaluate_formula(formula: &Formula, table: &MomentTable, n: usize) -> Result<f64> {
    if formula.kind == FormulaKind::KStat && n < formula.order() {
        return Err(Error::InsufficientSampleSize {
            n,
            k: formula.order(),
        });
    }
    let at = BigRational::from_integer(BigInt::from(n));
    let mut acc = NeumaierSum::default();
    for (product, coeff) in &formula.terms {
        let c = coeff
            .eval(&at)
            .ok_or(Error::InsufficientSampleSize {
                n,
                k: formula.order(),
            })?
            .to_f64()
            .unwrap_or(f64::NAN);
        let mut term = c;
        for symbol in &product.factors {
            term *= table
                .get(symbol)
                .ok_or_else(|| Error::MissingMoment(symbol.indices().to_vec()))?;
        }
        acc.add(term);
    }
    Ok(acc.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kstats::coefficient;

    fn idx(v: &[usize]) -> IndexMultiset {
        IndexMultiset::new(v.to_vec()).unwrap()
    }

    fn prod(symbols: &[&[usize]]) -> MomentProduct {
        MomentProduct::new(symbols.iter().map(|s| idx(s)).collect())
    }

    fn int(c: i64) -> RationalFunction {
        RationalFunction::from_integer(c)
    }

    /// `N^a / ((N−1)(N−2)...(N−d))`
    fn ratio_over_falling(c: i64, power: u32, d: i64) -> RationalFunction {
        let den = (1..=d).fold(Poly::constant(1), |acc, r| &acc * &Poly::linear_root(r));
        RationalFunction::new(&Poly::var().pow(power) * &Poly::constant(c), den).unwrap()
    }

    #[test]
    fn cumulant_formulas() {
        let f1 = cumulant_from_moments_formula(&idx(&[1])).unwrap();
        assert_eq!(f1.n_terms(), 1);
        assert_eq!(f1.coefficient(&prod(&[&[1]])), Some(&int(1)));

        let f2 = cumulant_from_moments_formula(&idx(&[1, 2])).unwrap();
        assert_eq!(f2.n_terms(), 2);
        assert_eq!(f2.coefficient(&prod(&[&[1, 2]])), Some(&int(1)));
        assert_eq!(f2.coefficient(&prod(&[&[1], &[2]])), Some(&int(-1)));

        let f3 = cumulant_from_moments_formula(&idx(&[1, 2, 3])).unwrap();
        assert_eq!(f3.n_terms(), 5);
        assert_eq!(f3.coefficient(&prod(&[&[1], &[2], &[3]])), Some(&int(2)));
        assert_eq!(f3.coefficient(&prod(&[&[1], &[2, 3]])), Some(&int(-1)));
        assert_eq!(f3.coefficient(&prod(&[&[2], &[1, 3]])), Some(&int(-1)));
        assert_eq!(f3.coefficient(&prod(&[&[3], &[1, 2]])), Some(&int(-1)));
        assert_eq!(f3.coefficient(&prod(&[&[1, 2, 3]])), Some(&int(1)));
    }

    #[test]
    fn moment_formulas() {
        let f2 = moments_from_cumulants_formula(&idx(&[1, 2])).unwrap();
        assert_eq!(f2.coefficient(&prod(&[&[1, 2]])), Some(&int(1)));
        assert_eq!(f2.coefficient(&prod(&[&[1], &[2]])), Some(&int(1)));
        let f3 = moments_from_cumulants_formula(&idx(&[4, 4, 4])).unwrap();
        assert_eq!(f3.n_terms(), 3);
        assert_eq!(f3.coefficient(&prod(&[&[4, 4, 4]])), Some(&int(1)));
        assert_eq!(f3.coefficient(&prod(&[&[4], &[4, 4]])), Some(&int(3)));
        assert_eq!(f3.coefficient(&prod(&[&[4], &[4], &[4]])), Some(&int(1)));
    }

    #[test]
    fn kstat_formulas() {
        let n_over = ratio_over_falling(1, 1, 1);
        let f2 = k_statistic_formula(&idx(&[1, 2])).unwrap();
        assert_eq!(f2.n_terms(), 2);
        assert_eq!(f2.coefficient(&prod(&[&[1, 2]])), Some(&n_over));
        assert_eq!(f2.coefficient(&prod(&[&[1], &[2]])), Some(&-&n_over));

        let c = ratio_over_falling(1, 2, 2);
        let scaled = |k: i64| &c * &int(k);
        let u3 = k_statistic_formula(&idx(&[1, 1, 1])).unwrap();
        assert_eq!(u3.n_terms(), 3);
        assert_eq!(u3.coefficient(&prod(&[&[1, 1, 1]])), Some(&c));
        assert_eq!(u3.coefficient(&prod(&[&[1], &[1, 1]])), Some(&scaled(-3)));
        assert_eq!(u3.coefficient(&prod(&[&[1], &[1], &[1]])), Some(&scaled(2)));
    }

    #[test]
    fn symbolic_coefficient_matches_numeric() {
        for k in 1..=6 {
            for profile in crate::combinatorics::integer_partitions(k).unwrap() {
                let sym = symbolic_coefficient(&profile);
                for n in [k, k + 1, 17, 1000] {
                    assert_eq!(
                        sym.eval_int(n as i64).unwrap(),
                        coefficient(&profile, n).unwrap(),
                        "{profile} at N={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn order_cap() {
        assert!(matches!(
            k_statistic_formula(&IndexMultiset::distinct(9).unwrap()),
            Err(Error::OrderAboveCap { order: 9, cap: 8 })
        ));
    }

    #[test]
    fn plain_rendering() {
        let f1 = cumulant_from_moments_formula(&idx(&[1])).unwrap();
        assert_eq!(render(&f1, RenderStyle::Plain), "m[1]");
        let f2 = cumulant_from_moments_formula(&idx(&[1, 2])).unwrap();
        assert_eq!(render(&f2, RenderStyle::Plain), "m[1,2] - m[1]*m[2]");
        let k2 = k_statistic_formula(&idx(&[1, 2])).unwrap();
        assert_eq!(
            render(&k2, RenderStyle::Plain),
            "(N/(N - 1)) * mhat[1,2] - (N/(N - 1)) * mhat[1]*mhat[2]"
        );
        assert_eq!(
            render(&k2, RenderStyle::Latex),
            "\\frac{N}{N - 1} \\hat m_{[1, 2]} - \\frac{N}{N - 1} \\hat m_{[1]} \\hat m_{[2]}"
        );
    }

    #[test]
    fn json_round_trip() {
        for f in [
            k_statistic_formula(&idx(&[1, 1, 2])).unwrap(),
            cumulant_from_moments_formula(&idx(&[1, 2, 3, 3])).unwrap(),
            moments_from_cumulants_formula(&idx(&[2, 2])).unwrap(),
        ] {
            let text = render(&f, RenderStyle::Json);
            let back = parse_json(&text).unwrap();
            assert_eq!(back, f);
            assert_eq!(render(&back, RenderStyle::Json), text);
        }
        assert!(parse_json("{\"kind\":\"nope\"}").is_err());
        let no_index = r#"{"kind":"cumulant","order":1,"terms":[{"product":[[3]],"coeff":{"num":[1],"den":[1]}}]}"#;
        assert_eq!(parse_json(no_index).unwrap().index(), &idx(&[3]));
    }

    #[test]
    fn evaluation() {
        let data =
            crate::moments::Dataset::from_columns(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]])
                .unwrap();
        let i = idx(&[1, 2]);
        let table = crate::moments::build_moment_table(&data, &i).unwrap();
        let f = k_statistic_formula(&i).unwrap();
        let v = evaluate_formula(&f, &table, 3).unwrap();
        let k = crate::kstats::k_statistic(&data, &i).unwrap();
        assert!((v - k).abs() <= 1e-12 * k.abs());
        assert!(evaluate_formula(&f, &table, 1).is_err());

        let ones = crate::moments::Dataset::from_columns(&[vec![1.0; 4], vec![1.0; 4]]).unwrap();
        let t1 = crate::moments::build_moment_table(&ones, &i).unwrap();
        assert_eq!(evaluate_formula(&f, &t1, 4).unwrap(), 0.0);

        let mean = k_statistic_formula(&idx(&[2])).unwrap();
        assert_eq!(evaluate_formula(&mean, &table, 3).unwrap(), 4.0);

        let sparse = crate::moments::build_moment_table(&data, &idx(&[1])).unwrap();
        assert!(matches!(
            evaluate_formula(&f, &sparse, 3),
            Err(Error::MissingMoment(_))
        ));
    }
}
