//! Power series: functions from a finite carrier into a target quantale,
//! with convolution, units, Kleene star, magic wand, and the lifted-law
//! suite.
//!
//! Series are dense: one value slot per carrier element. A slot holds
//! `Option<Q::V>`; `None` is the undefined value ⊥ used by partial targets.
//! Total targets keep every slot `Some`. Convolution over a partial target
//! (`convolve_partial`) discards undefined summands and returns ⊥ when no
//! defined summand exists.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Carrier, Element};
use crate::error::AlgebraError;
use crate::report::{CheckMode, LawReport};
use crate::value::Quantale;

/// Dense series over a carrier; `None` slots are the undefined value ⊥.
#[derive(Debug)]
pub struct PowerSeries<Q: Quantale> {
    carrier_id: u64,
    values: Vec<Option<Q::V>>,
}

impl<Q: Quantale> Clone for PowerSeries<Q> {
    fn clone(&self) -> Self {
        PowerSeries {
            carrier_id: self.carrier_id,
            values: self.values.clone(),
        }
    }
}

impl<Q: Quantale> PartialEq for PowerSeries<Q> {
    fn eq(&self, other: &Self) -> bool {
        self.carrier_id == other.carrier_id && self.values == other.values
    }
}

impl<Q: Quantale> Eq for PowerSeries<Q> {}

impl<Q: Quantale> PowerSeries<Q> {
    pub fn from_fn(c: &Carrier, f: impl FnMut(Element) -> Option<Q::V>) -> Self {
        PowerSeries {
            carrier_id: c.id(),
            values: c.elements().map(f).collect(),
        }
    }

    pub fn constant(c: &Carrier, v: Option<Q::V>) -> Self {
        PowerSeries {
            carrier_id: c.id(),
            values: vec![v; c.size()],
        }
    }

    pub fn carrier_id(&self) -> u64 {
        self.carrier_id
    }

    pub fn get(&self, x: Element) -> &Option<Q::V> {
        &self.values[x.index()]
    }

    pub fn set(&mut self, x: Element, v: Option<Q::V>) {
        self.values[x.index()] = v;
    }

    pub fn values(&self) -> &[Option<Q::V>] {
        &self.values
    }

    /// Whether every slot is defined.
    pub fn is_total_valued(&self) -> bool {
        self.values.iter().all(|v| v.is_some())
    }
}

fn guard_same_carrier<Q: Quantale>(
    c: &Carrier,
    fs: &[&PowerSeries<Q>],
) -> Result<(), AlgebraError> {
    for f in fs {
        if f.carrier_id != c.id() {
            return Err(AlgebraError::MixedCarriers {
                left: c.id(),
                right: f.carrier_id,
            });
        }
        if f.values.len() != c.size() {
            return Err(AlgebraError::LengthMismatch {
                len: f.values.len(),
                size: c.size(),
            });
        }
    }
    Ok(())
}

fn guard_total_valued<Q: Quantale>(
    c: &Carrier,
    fs: &[&PowerSeries<Q>],
) -> Result<(), AlgebraError> {
    for f in fs {
        for x in c.elements() {
            if f.get(x).is_none() {
                return Err(AlgebraError::UndefinedValue {
                    element: c.label(x),
                });
            }
        }
    }
    Ok(())
}

/// The zero series 𝕆: all-bottom over total targets, all-⊥ over partial
/// ones (the empty supremum of the respective regime).
pub fn zero_series<Q: Quantale>(c: &Carrier, q: &Q) -> PowerSeries<Q> {
    if q.is_total() {
        PowerSeries::constant(c, Some(q.bottom()))
    } else {
        PowerSeries::constant(c, None)
    }
}

/// The all-top series.
pub fn top_series<Q: Quantale>(c: &Carrier, q: &Q) -> PowerSeries<Q> {
    PowerSeries::constant(c, Some(q.top()))
}

/// Pointwise join; the empty family yields 𝕆.
pub fn sum_family<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    fs: &[&PowerSeries<Q>],
) -> Result<PowerSeries<Q>, AlgebraError> {
    guard_same_carrier(c, fs)?;
    let mut out = zero_series(c, q);
    for f in fs {
        for x in c.elements() {
            let v = match (out.get(x), f.get(x)) {
                (None, v) | (v, None) => v.clone(),
                (Some(a), Some(b)) => Some(q.join2(a, b)),
            };
            out.set(x, v);
        }
    }
    Ok(out)
}

/// Pointwise meet (⊥ absorbs); the empty family yields the all-top series.
pub fn inf_family<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    fs: &[&PowerSeries<Q>],
) -> Result<PowerSeries<Q>, AlgebraError> {
    guard_same_carrier(c, fs)?;
    let mut out = top_series(c, q);
    for f in fs {
        for x in c.elements() {
            let v = match (out.get(x), f.get(x)) {
                (None, _) | (_, None) => None,
                (Some(a), Some(b)) => Some(q.meet2(a, b)),
            };
            out.set(x, v);
        }
    }
    Ok(out)
}

/// Pointwise order: ⊥ below everything.
pub fn series_leq<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    f: &PowerSeries<Q>,
    g: &PowerSeries<Q>,
) -> bool {
    c.elements().all(|x| match (f.get(x), g.get(x)) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => q.leq(a, b),
    })
}

/// Convolution over a total target: (f·g) x = Σ_{x=y·z} f y · g z.
pub fn convolve<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    f: &PowerSeries<Q>,
    g: &PowerSeries<Q>,
) -> Result<PowerSeries<Q>, AlgebraError> {
    if !q.is_total() {
        return Err(AlgebraError::PartialTarget);
    }
    guard_same_carrier(c, &[f, g])?;
    guard_total_valued(c, &[f, g])?;
    let mut out = PowerSeries::constant(c, Some(q.bottom()));
    for x in c.elements() {
        let mut acc = q.bottom();
        for &(y, z) in c.splittings(x) {
            let a = f.get(y).as_ref().unwrap();
            let b = g.get(z).as_ref().unwrap();
            let p = q.mult(a, b).expect("total target");
            acc = q.join2(&acc, &p);
        }
        out.set(x, Some(acc));
    }
    Ok(out)
}

/// What an empty defined-summand set yields in `convolve_partial_mode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmptySummands {
    /// ⊥ (the default; makes the partial unit law hold).
    Undefined,
    /// The target's lattice bottom (the alternative, exposed for
    /// experimentation).
    Bottom,
}

/// Convolution over a (possibly) partial target: undefined summands — from
/// an undefined series value or an undefined target product — are
/// discarded; an empty defined-summand set yields ⊥.
pub fn convolve_partial<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    f: &PowerSeries<Q>,
    g: &PowerSeries<Q>,
) -> Result<PowerSeries<Q>, AlgebraError> {
    convolve_partial_mode(c, q, f, g, EmptySummands::Undefined)
}

/// `convolve_partial` with an explicit empty-summand policy.
pub fn convolve_partial_mode<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    f: &PowerSeries<Q>,
    g: &PowerSeries<Q>,
    mode: EmptySummands,
) -> Result<PowerSeries<Q>, AlgebraError> {
    guard_same_carrier(c, &[f, g])?;
    let mut out = PowerSeries::constant(c, None);
    for x in c.elements() {
        let mut acc: Option<Q::V> = None;
        for &(y, z) in c.splittings(x) {
            let p = match (f.get(y), g.get(z)) {
                (Some(a), Some(b)) => q.mult(a, b),
                _ => None,
            };
            if let Some(p) = p {
                acc = Some(match acc {
                    None => p,
                    Some(a) => q.join2(&a, &p),
                });
            }
        }
        if acc.is_none() && mode == EmptySummands::Bottom {
            acc = Some(q.bottom());
        }
        out.set(x, acc);
    }
    Ok(out)
}

/// The unit series 𝟙: target unit at the carrier unit, zero elsewhere.
pub fn unit_series<Q: Quantale>(c: &Carrier, q: &Q) -> Result<PowerSeries<Q>, AlgebraError> {
    let u = c
        .unit()
        .ok_or_else(|| AlgebraError::MissingUnit("carrier".to_string()))?;
    direct_unit(c, q, |x| x == u)
}

/// Unit series from a predicate, for carriers whose convolution unit is not
/// a single element (diagonal relations, single-state traces, point
/// intervals). Value 1 on the predicate, zero (⊥ for partial targets)
/// elsewhere.
pub fn direct_unit<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    pred: impl Fn(Element) -> bool,
) -> Result<PowerSeries<Q>, AlgebraError> {
    let e = q
        .unit()
        .ok_or_else(|| AlgebraError::MissingUnit("target".to_string()))?;
    let rest = if q.is_total() { Some(q.bottom()) } else { None };
    Ok(PowerSeries::from_fn(c, |x| {
        if pred(x) {
            Some(e.clone())
        } else {
            rest.clone()
        }
    }))
}

/// Kleene star: least fixpoint of α ↦ 𝟙 + f·α by iteration from 𝕆.
pub fn star<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    f: &PowerSeries<Q>,
    unit: &PowerSeries<Q>,
    cap: usize,
) -> Result<PowerSeries<Q>, AlgebraError> {
    guard_same_carrier(c, &[f, unit])?;
    let mut alpha = zero_series(c, q);
    for _ in 0..cap {
        let fa = convolve(c, q, f, &alpha)?;
        let next = sum_family(c, q, &[unit, &fa])?;
        if next == alpha {
            return Ok(alpha);
        }
        alpha = next;
    }
    Err(AlgebraError::StarDivergence { cap })
}

/// Magic wand over a Boolean target:
/// (f -∗ g) y = ∏_{z : z·y defined} (f z ⇒ g (z·y)).
/// The greatest h with f∗h ≤ g.
pub fn wand<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    f: &PowerSeries<Q>,
    g: &PowerSeries<Q>,
) -> Result<PowerSeries<Q>, AlgebraError> {
    if !q.is_boolean() {
        return Err(AlgebraError::NonBooleanTarget);
    }
    guard_same_carrier(c, &[f, g])?;
    guard_total_valued(c, &[f, g])?;
    let mut out = top_series(c, q);
    for y in c.elements() {
        let mut acc = q.top();
        for z in c.elements() {
            if let Some(zy) = c.compose(z, y).element() {
                let a = f.get(z).as_ref().unwrap();
                let b = g.get(zy).as_ref().unwrap();
                let imp = q.implies(a, b).expect("boolean target");
                acc = q.meet2(&acc, &imp);
            }
        }
        out.set(y, Some(acc));
    }
    Ok(out)
}

/// Compact display of a series for witnesses: non-zero slots as `x↦v`,
/// top values as bare labels (set notation for Boolean series).
pub fn fmt_series<Q: Quantale>(c: &Carrier, q: &Q, f: &PowerSeries<Q>) -> String {
    let zero = if q.is_total() { Some(q.bottom()) } else { None };
    let mut parts = Vec::new();
    for x in c.elements() {
        let v = f.get(x);
        if *v == zero {
            continue;
        }
        match v {
            Some(w) if *w == q.top() => parts.push(c.label(x)),
            Some(w) => parts.push(format!("{}↦{}", c.label(x), q.fmt_value(w))),
            None => parts.push(format!("{}↦⊥", c.label(x))),
        }
    }
    format!("{{{}}}", parts.join(", "))
}

/// Configuration for the lifted-law suite.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    /// Max sampled tuples per law when the pool exceeds the bound.
    pub budget: u64,
    pub seed: u64,
    /// Pool sizes up to this bound are checked exhaustively.
    pub exhaustive_bound: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: 100_000,
            seed: 42,
            exhaustive_bound: 16,
        }
    }
}

/// Lifted-law suite over a pool of series: associativity, unit laws,
/// distributivity for family sizes 0–3, commutativity where declared, and
/// the lifted lattice laws.
pub struct LiftedSuite<'a, Q: Quantale> {
    carrier: &'a Carrier,
    target: &'a Q,
    pool: Vec<PowerSeries<Q>>,
    names: Vec<String>,
    unit: Option<usize>,
    commutative: bool,
    partial: bool,
    config: SuiteConfig,
}

pub(crate) fn standard_pool<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    unit: Option<PowerSeries<Q>>,
    seed: u64,
) -> (Vec<PowerSeries<Q>>, Vec<String>, Option<usize>) {
    let mut pool = Vec::new();
    let mut names = Vec::new();
    pool.push(zero_series(c, q));
    names.push("O".to_string());
    let unit_idx = unit.map(|u| {
        pool.push(u);
        names.push("1".to_string());
        pool.len() - 1
    });
    pool.push(top_series(c, q));
    names.push("T".to_string());
    let atom_count = c.size().min(8);
    for i in 0..atom_count {
        let x = Element((i * c.size() / atom_count) as u32);
        let mut s = zero_series(c, q);
        s.set(x, Some(q.top()));
        pool.push(s);
        names.push(format!("atom({})", c.label(x)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rand_start = pool.len();
    for k in 0..3 {
        let s = PowerSeries::from_fn(c, |_| Some(q.random_value(&mut rng)));
        pool.push(s);
        names.push(format!("rand{k}"));
    }
    if rand_start >= 2 {
        if let Ok(p) = convolve(c, q, &pool[rand_start - 2], &pool[rand_start - 1]) {
            pool.push(p);
            names.push("prod0".to_string());
        } else if let Ok(p) = convolve_partial(c, q, &pool[rand_start - 2], &pool[rand_start - 1])
        {
            pool.push(p);
            names.push("prod0".to_string());
        }
    }
    let s = sum_family(c, q, &[&pool[rand_start], &pool[rand_start + 1]]).unwrap();
    pool.push(s);
    names.push("sum0".to_string());
    (pool, names, unit_idx)
}

fn subidentity_pool<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    embed: &dyn Fn(Element) -> Q::V,
    unit: Option<PowerSeries<Q>>,
) -> (Vec<PowerSeries<Q>>, Vec<String>, Option<usize>) {
    let mut pool = Vec::new();
    let mut names = Vec::new();
    pool.push(PowerSeries::constant(c, None));
    names.push("O".to_string());
    let unit_idx = unit.map(|u| {
        pool.push(u);
        names.push("e".to_string());
        pool.len() - 1
    });
    let atom_count = c.size().min(8);
    let mut atoms = Vec::new();
    for i in 0..atom_count {
        let x = Element((i * c.size() / atom_count) as u32);
        let mut s = PowerSeries::constant(c, None);
        s.set(x, Some(embed(x)));
        atoms.push(pool.len());
        pool.push(s);
        names.push(format!("atom({})", c.label(x)));
    }
    for w in atoms.windows(2).take(2) {
        let s = sum_family(c, q, &[&pool[w[0]], &pool[w[1]]]).unwrap();
        pool.push(s);
        names.push("sum".to_string());
    }
    if atoms.len() >= 2 {
        let s = convolve_partial(c, q, &pool[atoms[0]], &pool[atoms[1]]).unwrap();
        pool.push(s);
        names.push("prod".to_string());
    }
    (pool, names, unit_idx)
}

pub(crate) enum Tuples {
    Exhaustive { len: usize, arity: usize },
    Sampled { len: usize, arity: usize, budget: u64, rng: ChaCha8Rng },
}

impl Tuples {
    pub(crate) fn mode(&self, cfg: &SuiteConfig) -> CheckMode {
        match self {
            Tuples::Exhaustive { .. } => CheckMode::Exhaustive,
            Tuples::Sampled { budget, .. } => CheckMode::Sampled {
                seed: cfg.seed,
                count: *budget,
            },
        }
    }

    pub(crate) fn for_each(self, mut f: impl FnMut(&[usize]) -> bool) -> u64 {
        let mut checked = 0u64;
        match self {
            Tuples::Exhaustive { len, arity } => {
                let mut idx = vec![0usize; arity];
                loop {
                    checked += 1;
                    if !f(&idx) {
                        return checked;
                    }
                    let mut k = 0;
                    loop {
                        if k == arity {
                            return checked;
                        }
                        idx[k] += 1;
                        if idx[k] < len {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                }
            }
            Tuples::Sampled {
                len,
                arity,
                budget,
                mut rng,
            } => {
                let mut idx = vec![0usize; arity];
                for _ in 0..budget {
                    for slot in idx.iter_mut() {
                        *slot = rng.gen_range(0..len);
                    }
                    checked += 1;
                    if !f(&idx) {
                        return checked;
                    }
                }
                checked
            }
        }
    }
}

impl<'a, Q: Quantale> LiftedSuite<'a, Q> {
    /// Suite over a total target with the standard generator pool.
    pub fn total(
        carrier: &'a Carrier,
        target: &'a Q,
        unit: Option<PowerSeries<Q>>,
        commutative: bool,
        config: SuiteConfig,
    ) -> Self {
        let (pool, names, unit_idx) = standard_pool(carrier, target, unit, config.seed);
        LiftedSuite {
            carrier,
            target,
            pool,
            names,
            unit: unit_idx,
            commutative: commutative && target.commutative(),
            partial: false,
            config,
        }
    }

    /// Suite over a partial target. The pool is restricted to subidentity
    /// series (each slot ⊥ or the element's own embedded value) plus the
    /// unit: on arbitrary series the discard semantics refutes
    /// associativity and distributivity (see the partial-lifting tests).
    pub fn partial(
        carrier: &'a Carrier,
        target: &'a Q,
        embed: &dyn Fn(Element) -> Q::V,
        unit: Option<PowerSeries<Q>>,
        commutative: bool,
        config: SuiteConfig,
    ) -> Self {
        let (pool, names, unit_idx) = subidentity_pool(carrier, target, embed, unit);
        LiftedSuite {
            carrier,
            target,
            pool,
            names,
            unit: unit_idx,
            commutative: commutative && target.commutative(),
            partial: true,
            config,
        }
    }

    pub fn pool_len(&self) -> usize {
        self.pool.len()
    }

    fn mult(&self, f: &PowerSeries<Q>, g: &PowerSeries<Q>) -> PowerSeries<Q> {
        if self.partial {
            convolve_partial(self.carrier, self.target, f, g).expect("same carrier")
        } else {
            convolve(self.carrier, self.target, f, g).expect("total suite")
        }
    }

    fn sum(&self, fs: &[&PowerSeries<Q>]) -> PowerSeries<Q> {
        sum_family(self.carrier, self.target, fs).expect("same carrier")
    }

    fn tuples(&self, arity: usize) -> Tuples {
        if self.pool.len() <= self.config.exhaustive_bound {
            Tuples::Exhaustive {
                len: self.pool.len(),
                arity,
            }
        } else {
            Tuples::Sampled {
                len: self.pool.len(),
                arity,
                budget: self.config.budget,
                rng: ChaCha8Rng::seed_from_u64(self.config.seed ^ arity as u64),
            }
        }
    }

    fn diff_witness(
        &self,
        vars: &[(&str, usize)],
        lhs: &PowerSeries<Q>,
        rhs: &PowerSeries<Q>,
    ) -> Vec<String> {
        let mut w: Vec<String> = vars
            .iter()
            .map(|(v, i)| format!("{v}={}", self.names[*i]))
            .collect();
        for x in self.carrier.elements() {
            if lhs.get(x) != rhs.get(x) {
                w.push(format!("at {}", self.carrier.label(x)));
                break;
            }
        }
        w.push(format!(
            "lhs={}",
            fmt_series(self.carrier, self.target, lhs)
        ));
        w.push(format!(
            "rhs={}",
            fmt_series(self.carrier, self.target, rhs)
        ));
        w
    }

    fn report(
        &self,
        law: &str,
        arity: usize,
        mut check: impl FnMut(&[usize]) -> Option<(Vec<(&'static str, usize)>, PowerSeries<Q>, PowerSeries<Q>)>,
    ) -> LawReport {
        let tuples = self.tuples(arity);
        let mode = tuples.mode(&self.config);
        let mut witness: Option<Vec<String>> = None;
        let checked = tuples.for_each(|idx| match check(idx) {
            None => true,
            Some((vars, lhs, rhs)) => {
                witness = Some(self.diff_witness(&vars, &lhs, &rhs));
                false
            }
        });
        match witness {
            None => LawReport::pass(law, checked, mode),
            Some(w) => LawReport::fail(law, checked, mode, w),
        }
    }

    fn check_associativity(&self) -> LawReport {
        self.report("associativity", 3, |idx| {
            let (f, g, h) = (&self.pool[idx[0]], &self.pool[idx[1]], &self.pool[idx[2]]);
            let lhs = self.mult(&self.mult(f, g), h);
            let rhs = self.mult(f, &self.mult(g, h));
            (lhs != rhs).then(|| {
                (
                    vec![("f", idx[0]), ("g", idx[1]), ("h", idx[2])],
                    lhs,
                    rhs,
                )
            })
        })
    }

    fn check_unit(&self, side_left: bool) -> LawReport {
        let u = self.unit.expect("unit present");
        let law = if side_left { "unit-left" } else { "unit-right" };
        self.report(law, 1, |idx| {
            let f = &self.pool[idx[0]];
            let lhs = if side_left {
                self.mult(&self.pool[u], f)
            } else {
                self.mult(f, &self.pool[u])
            };
            (lhs != *f).then(|| (vec![("f", idx[0])], lhs, f.clone()))
        })
    }

    /// Unit law over unrestricted random series (partial regime): the
    /// ⊥-padded unit holds for arbitrary series, not just the pool.
    fn check_unit_universal(&self) -> LawReport {
        let u = self.unit.expect("unit present");
        let unit = &self.pool[u];
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ 0x5eed);
        let vals = self.target.enumerate();
        let count = 20u64;
        for k in 0..count {
            let f = PowerSeries::from_fn(self.carrier, |_| {
                if rng.gen_bool(0.4) {
                    None
                } else {
                    Some(vals[rng.gen_range(0..vals.len())].clone())
                }
            });
            let left = self.mult(unit, &f);
            let right = self.mult(&f, unit);
            if left != f || right != f {
                return LawReport::fail(
                    "unit-universal",
                    k + 1,
                    CheckMode::Sampled {
                        seed: self.config.seed,
                        count,
                    },
                    vec![
                        format!("f=random#{k}"),
                        format!("e·f={}", fmt_series(self.carrier, self.target, &left)),
                        format!("f·e={}", fmt_series(self.carrier, self.target, &right)),
                        format!("f={}", fmt_series(self.carrier, self.target, &f)),
                    ],
                );
            }
        }
        LawReport::pass(
            "unit-universal",
            count,
            CheckMode::Sampled {
                seed: self.config.seed,
                count,
            },
        )
    }

    fn check_distributivity(&self, left: bool, size: usize) -> LawReport {
        let law = format!(
            "{}-distributivity-{}",
            if left { "left" } else { "right" },
            size
        );
        self.report(&law, size + 1, |idx| {
            let f = &self.pool[idx[0]];
            let family: Vec<&PowerSeries<Q>> = idx[1..].iter().map(|i| &self.pool[*i]).collect();
            let joined = self.sum(&family);
            let lhs = if left {
                self.mult(f, &joined)
            } else {
                self.mult(&joined, f)
            };
            let parts: Vec<PowerSeries<Q>> = family
                .iter()
                .map(|g| if left { self.mult(f, g) } else { self.mult(g, f) })
                .collect();
            let rhs = if parts.is_empty() {
                joined
            } else {
                self.sum(&parts.iter().collect::<Vec<_>>())
            };
            (lhs != rhs).then(|| {
                let mut vars = vec![("f", idx[0])];
                for (k, i) in idx[1..].iter().enumerate() {
                    vars.push((["g1", "g2", "g3"][k], *i));
                }
                (vars, lhs, rhs)
            })
        })
    }

    fn check_commutativity(&self) -> LawReport {
        self.report("commutativity", 2, |idx| {
            let (f, g) = (&self.pool[idx[0]], &self.pool[idx[1]]);
            let lhs = self.mult(f, g);
            let rhs = self.mult(g, f);
            (lhs != rhs).then(|| (vec![("f", idx[0]), ("g", idx[1])], lhs, rhs))
        })
    }

    fn check_lattice_absorption(&self) -> LawReport {
        let c = self.carrier;
        let q = self.target;
        self.report("lattice-absorption", 2, |idx| {
            let (f, g) = (&self.pool[idx[0]], &self.pool[idx[1]]);
            let meet = inf_family(c, q, &[f, g]).unwrap();
            let lhs = self.sum(&[f, &meet]);
            if lhs != *f {
                return Some((vec![("f", idx[0]), ("g", idx[1])], lhs, f.clone()));
            }
            let join = self.sum(&[f, g]);
            let lhs = inf_family(c, q, &[f, &join]).unwrap();
            (lhs != *f).then(|| (vec![("f", idx[0]), ("g", idx[1])], lhs, f.clone()))
        })
    }

    fn check_lattice_distributivity(&self) -> LawReport {
        let c = self.carrier;
        let q = self.target;
        self.report("lattice-distributivity", 3, |idx| {
            let (f, g, h) = (&self.pool[idx[0]], &self.pool[idx[1]], &self.pool[idx[2]]);
            let gh = inf_family(c, q, &[g, h]).unwrap();
            let lhs = self.sum(&[f, &gh]);
            let fg = self.sum(&[f, g]);
            let fh = self.sum(&[f, h]);
            let rhs = inf_family(c, q, &[&fg, &fh]).unwrap();
            (lhs != rhs).then(|| {
                (
                    vec![("f", idx[0]), ("g", idx[1]), ("h", idx[2])],
                    lhs,
                    rhs,
                )
            })
        })
    }

    pub fn run(&self) -> Vec<LawReport> {
        let mut reports = Vec::new();
        reports.push(self.check_associativity());
        if self.unit.is_some() {
            reports.push(self.check_unit(true));
            reports.push(self.check_unit(false));
            if self.partial {
                reports.push(self.check_unit_universal());
            }
        }
        for left in [true, false] {
            for size in 0..=3 {
                reports.push(self.check_distributivity(left, size));
            }
        }
        if self.commutative {
            reports.push(self.check_commutativity());
        }
        reports.push(self.check_lattice_absorption());
        reports.push(self.check_lattice_distributivity());
        reports
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CarrierBuilder;
    use crate::report::LawStatus;
    use crate::value::{BoolQ, Trop, TropicalQ, VectorQ};

    fn relation_carrier(n: usize) -> Carrier {
        let b = CarrierBuilder::from_fn(n * n, |x, y| {
            let (a, b1) = (x / n, x % n);
            let (b2, c) = (y / n, y % n);
            (b1 == b2).then_some(a * n + c)
        });
        let mut labels = Vec::new();
        for a in 0..n {
            for c in 0..n {
                labels.push(format!("({},{})", a + 1, c + 1));
            }
        }
        b.labels(labels).build()
    }

    /// Multiset base carrier: x·y = x iff x = y.
    fn multiset_carrier(symbols: &[&str]) -> Carrier {
        CarrierBuilder::from_fn(symbols.len(), |x, y| (x == y).then_some(x))
            .commutative_hint(true)
            .labels(symbols.iter().map(|s| s.to_string()).collect())
            .build()
    }

    /// Scalars {0..cap} with the zero-test sum.
    fn scalar_carrier(cap: u32) -> Carrier {
        CarrierBuilder::from_fn((cap + 1) as usize, |x, y| {
            (x == 0 || y == 0).then_some(x + y)
        })
        .unit(Element(0))
        .commutative_hint(true)
        .labels((0..=cap).map(|i| i.to_string()).collect())
        .build()
    }

    fn charf(c: &Carrier, xs: &[u32]) -> PowerSeries<BoolQ> {
        PowerSeries::from_fn(c, |e| Some(xs.contains(&e.0)))
    }

    #[test]
    fn relation_convolution_is_composition() {
        let c = relation_carrier(3);
        // char{(1,2)}·char{(2,3)} = char{(1,3)}: indices 1, 5, 2.
        let f = charf(&c, &[1]);
        let g = charf(&c, &[5]);
        let fg = convolve(&c, &BoolQ, &f, &g).unwrap();
        assert_eq!(fg, charf(&c, &[2]));
    }

    #[test]
    fn multiset_paper_identities() {
        let c = multiset_carrier(&["a", "b", "c", "d"]);
        let q = TropicalQ::new(16);
        let ms = |m: [u32; 4]| {
            PowerSeries::from_fn(&c, |x| Some(Trop::Fin(m[x.index()])))
        };
        let f = ms([2, 5, 1, 0]);
        let g = ms([1, 3, 0, 2]);
        assert_eq!(convolve(&c, &q, &f, &g).unwrap(), ms([3, 8, 1, 2]));
        assert_eq!(sum_family(&c, &q, &[&f, &g]).unwrap(), ms([2, 5, 1, 2]));
        assert_eq!(inf_family(&c, &q, &[&f, &g]).unwrap(), ms([1, 3, 0, 0]));
    }

    #[test]
    fn empty_families() {
        let c = relation_carrier(2);
        let empty: [&PowerSeries<BoolQ>; 0] = [];
        assert_eq!(
            sum_family(&c, &BoolQ, &empty).unwrap(),
            zero_series(&c, &BoolQ)
        );
        assert_eq!(
            inf_family(&c, &BoolQ, &empty).unwrap(),
            top_series(&c, &BoolQ)
        );
    }

    #[test]
    fn convolve_rejects_partial_target_and_mixed_carriers() {
        let c = scalar_carrier(2);
        let q = VectorQ::new(1, 2);
        let f = PowerSeries::from_fn(&c, |_| Some(vec![0]));
        assert!(matches!(
            convolve(&c, &q, &f, &f),
            Err(AlgebraError::PartialTarget)
        ));
        let c2 = scalar_carrier(2);
        let g: PowerSeries<BoolQ> = charf(&c2, &[0]);
        let h = charf(&c, &[0]);
        assert!(matches!(
            convolve(&c, &BoolQ, &h, &g),
            Err(AlgebraError::MixedCarriers { .. })
        ));
    }

    #[test]
    fn partial_unit_law_on_arbitrary_series() {
        let c = scalar_carrier(2);
        let q = VectorQ::new(1, 2);
        let e = unit_series(&c, &q).unwrap();
        assert_eq!(e.get(Element(0)), &Some(vec![0]));
        assert_eq!(e.get(Element(1)), &None);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let f = PowerSeries::from_fn(&c, |_| {
                if rng.gen_bool(0.3) {
                    None
                } else {
                    Some(vec![rng.gen_range(0..=2)])
                }
            });
            assert_eq!(convolve_partial(&c, &q, &e, &f).unwrap(), f);
            assert_eq!(convolve_partial(&c, &q, &f, &e).unwrap(), f);
        }
    }

    /// Frozen counterexample: discard semantics breaks associativity on
    /// arbitrary (non-subidentity) series over a partial target.
    #[test]
    fn partial_associativity_counterexample() {
        let c = scalar_carrier(2);
        let q = VectorQ::new(1, 2);
        let s = |vals: [u32; 3]| {
            PowerSeries::from_fn(&c, |x| Some(vec![vals[x.index()]]))
        };
        let f = s([1, 2, 0]);
        let g = s([0, 0, 0]);
        let h = s([1, 0, 0]);
        let fg = convolve_partial(&c, &q, &f, &g).unwrap();
        assert_eq!(fg, s([1, 2, 1]));
        let lhs = convolve_partial(&c, &q, &fg, &h).unwrap();
        let gh = convolve_partial(&c, &q, &g, &h).unwrap();
        assert_eq!(gh, s([1, 1, 1]));
        let rhs = convolve_partial(&c, &q, &f, &gh).unwrap();
        assert_eq!(lhs.get(Element(1)), &Some(vec![1]));
        assert_eq!(rhs.get(Element(1)), &None);
        assert_ne!(lhs, rhs);
    }

    /// Frozen counterexample: discard semantics breaks left distributivity
    /// on series with clashing values at shared support.
    #[test]
    fn partial_distributivity_counterexample() {
        // Vector carrier dim 2 over {0,1,2}: element (i,j) at index 3i+j.
        let c = CarrierBuilder::from_fn(9, |x, y| {
            let (a, b) = (x / 3, x % 3);
            let (p, r) = (y / 3, y % 3);
            ((a == 0 || p == 0) && (b == 0 || r == 0) && a + p <= 2 && b + r <= 2)
                .then_some((a + p) * 3 + (b + r))
        })
        .unit(Element(0))
        .commutative_hint(true)
        .build();
        let q = VectorQ::new(2, 2);
        let atom = |e: u32, v: [u32; 2]| {
            let mut s: PowerSeries<VectorQ> = PowerSeries::constant(&c, None);
            s.set(Element(e), Some(v.to_vec()));
            s
        };
        // f at (0,0) value (1,0); g, h at (0,1) values (0,1) and (2,0).
        let f = atom(0, [1, 0]);
        let g = atom(1, [0, 1]);
        let h = atom(1, [2, 0]);
        let gh = sum_family(&c, &q, &[&g, &h]).unwrap();
        let lhs = convolve_partial(&c, &q, &f, &gh).unwrap();
        let fg = convolve_partial(&c, &q, &f, &g).unwrap();
        let fh = convolve_partial(&c, &q, &f, &h).unwrap();
        let rhs = sum_family(&c, &q, &[&fg, &fh]).unwrap();
        // At element (0,1): f·(g+h) has no defined summand, f·g + f·h does.
        assert_eq!(lhs.get(Element(1)), &None);
        assert_eq!(rhs.get(Element(1)), &Some(vec![1, 1]));
    }

    #[test]
    fn empty_summand_mode_flag() {
        let c = scalar_carrier(1);
        let q = VectorQ::new(1, 1);
        let undef: PowerSeries<VectorQ> = PowerSeries::constant(&c, None);
        let f = PowerSeries::from_fn(&c, |x| Some(vec![x.0]));
        let d = convolve_partial(&c, &q, &f, &undef).unwrap();
        assert!(d.values().iter().all(|v| v.is_none()));
        let b = convolve_partial_mode(&c, &q, &f, &undef, EmptySummands::Bottom).unwrap();
        assert!(b.values().iter().all(|v| *v == Some(vec![0])));
    }

    #[test]
    fn star_relation_reachability() {
        let c = relation_carrier(3);
        let unit = direct_unit(&c, &BoolQ, |x| x.0 / 3 == x.0 % 3).unwrap();
        // char{(1,2),(2,3)}: indices 1 and 5.
        let f = charf(&c, &[1, 5]);
        let s = star(&c, &BoolQ, &f, &unit, 1000).unwrap();
        // Diagonal + (1,2),(2,3),(1,3): indices 0,4,8,1,5,2.
        assert_eq!(s, charf(&c, &[0, 1, 2, 4, 5, 8]));
        // 𝕆* = 𝟙.
        let z = zero_series(&c, &BoolQ);
        assert_eq!(star(&c, &BoolQ, &z, &unit, 10).unwrap(), unit);
    }

    #[test]
    fn star_truncated_language() {
        // Words over {a} of length ≤ 2: ε, a, aa.
        let c = CarrierBuilder::from_fn(3, |x, y| (x + y <= 2).then_some(x + y))
            .unit(Element(0))
            .labels(vec!["ε".into(), "a".into(), "aa".into()])
            .build();
        let unit = unit_series(&c, &BoolQ).unwrap();
        let f = charf(&c, &[1]);
        let s = star(&c, &BoolQ, &f, &unit, 1000).unwrap();
        assert_eq!(s, charf(&c, &[0, 1, 2]));
    }

    #[test]
    fn star_divergence_cap() {
        let c = relation_carrier(2);
        let unit = direct_unit(&c, &BoolQ, |x| x.0 / 2 == x.0 % 2).unwrap();
        let f = charf(&c, &[1]); // (1,2)
        assert!(matches!(
            star(&c, &BoolQ, &f, &unit, 1),
            Err(AlgebraError::StarDivergence { cap: 1 })
        ));
    }

    #[test]
    fn wand_is_upper_adjoint() {
        // Disjoint-union carrier on subsets of {1,2}.
        let c = CarrierBuilder::from_fn(4, |x, y| (x & y == 0).then_some(x | y))
            .unit(Element(0))
            .commutative_hint(true)
            .build();
        let all: Vec<PowerSeries<BoolQ>> = (0..16u32)
            .map(|m| PowerSeries::from_fn(&c, |x| Some(m >> x.0 & 1 == 1)))
            .collect();
        for f in &all {
            for g in &all {
                let w = wand(&c, &BoolQ, f, g).unwrap();
                // Oracle: join of all h with f∗h ≤ g.
                let good: Vec<&PowerSeries<BoolQ>> = all
                    .iter()
                    .filter(|h| {
                        let fh = convolve(&c, &BoolQ, f, h).unwrap();
                        series_leq(&c, &BoolQ, &fh, g)
                    })
                    .collect();
                let oracle = sum_family(&c, &BoolQ, &good).unwrap();
                assert_eq!(w, oracle);
                // Adjunction both ways.
                for h in &all {
                    let fh = convolve(&c, &BoolQ, f, h).unwrap();
                    assert_eq!(
                        series_leq(&c, &BoolQ, &fh, g),
                        series_leq(&c, &BoolQ, h, &w)
                    );
                }
            }
        }
    }

    #[test]
    fn wand_rejects_non_boolean() {
        let c = multiset_carrier(&["a"]);
        let q = TropicalQ::new(3);
        let f = zero_series(&c, &q);
        assert!(matches!(
            wand(&c, &q, &f, &f),
            Err(AlgebraError::NonBooleanTarget)
        ));
    }

    #[test]
    fn lifted_suite_relations_all_pass() {
        let c = relation_carrier(3);
        let unit = direct_unit(&c, &BoolQ, |x| x.0 / 3 == x.0 % 3).unwrap();
        let suite = LiftedSuite::total(&c, &BoolQ, Some(unit), false, SuiteConfig::default());
        assert!(suite.pool_len() <= 16);
        let reports = suite.run();
        assert_eq!(
            reports.iter().filter(|r| r.law.starts_with("left-dist")).count(),
            4
        );
        for r in &reports {
            assert_eq!(r.status, LawStatus::Pass, "{} failed: {:?}", r.law, r.witness);
            assert_eq!(r.mode, CheckMode::Exhaustive);
        }
    }

    #[test]
    fn lifted_suite_partial_vectors_all_pass() {
        let c = scalar_carrier(2);
        let q = VectorQ::new(1, 2);
        let unit = unit_series(&c, &q).unwrap();
        let embed = |x: Element| vec![x.0];
        let suite =
            LiftedSuite::partial(&c, &q, &embed, Some(unit), true, SuiteConfig::default());
        let reports = suite.run();
        for r in &reports {
            assert_eq!(r.status, LawStatus::Pass, "{} failed: {:?}", r.law, r.witness);
        }
        assert!(reports.iter().any(|r| r.law == "unit-universal"));
        assert!(reports.iter().any(|r| r.law == "commutativity"));
    }

    #[test]
    fn lifted_suite_sampling_is_deterministic() {
        let c = relation_carrier(2);
        let unit = direct_unit(&c, &BoolQ, |x| x.0 / 2 == x.0 % 2).unwrap();
        let cfg = SuiteConfig {
            budget: 500,
            seed: 9,
            exhaustive_bound: 2,
        };
        let r1 = LiftedSuite::total(&c, &BoolQ, Some(unit.clone()), false, cfg).run();
        let r2 = LiftedSuite::total(&c, &BoolQ, Some(unit), false, cfg).run();
        assert_eq!(r1, r2);
        assert!(r1
            .iter()
            .all(|r| matches!(r.mode, CheckMode::Sampled { seed: 9, .. })));
    }
}
