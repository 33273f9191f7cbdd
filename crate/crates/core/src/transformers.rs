//! State transformers, the Kleisli lifting to predicate transformers,
//! locality, and the frame rule.
//!
//! Predicates over a base monoid S are bitmasks; predicate transformers
//! are tables over 2^S. Transformer convolution is ordinary power-series
//! convolution on the complex-product monoid 2^S with the powerset
//! target, so one convolution engine serves both layers.

use crate::algebra::{Carrier, CarrierBuilder, Element};
use crate::error::AlgebraError;
use crate::report::LawReport;
use crate::series::{convolve, PowerSeries, SuiteConfig};
use crate::value::PowersetQ;

/// A nondeterministic state transformer S → 2^S with an explicit fault:
/// `None` marks states where the command faults (distinct from returning
/// no states, which is miraculous rather than faulty).
pub struct StateTransformer {
    n: usize,
    map: Vec<Option<u64>>,
}

impl StateTransformer {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> Option<u64>) -> Self {
        assert!(n <= 64);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let map = (0..n).map(|x| f(x).map(|s| s & mask)).collect();
        StateTransformer { n, map }
    }

    pub fn apply(&self, x: usize) -> Option<u64> {
        self.map[x]
    }
}

/// f_R x = {y | (x,y) ∈ R}; relations never fault.
pub fn transformer_of_relation(n: usize, pairs: &[(usize, usize)]) -> StateTransformer {
    StateTransformer::from_fn(n, |x| {
        Some(
            pairs
                .iter()
                .filter(|(a, _)| *a == x)
                .fold(0u64, |m, (_, b)| m | 1 << b),
        )
    })
}

/// A predicate transformer 2^S → 2^S as a dense table indexed by the
/// predicate bitmask.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PredicateTransformer {
    n: usize,
    table: Vec<u64>,
}

impl PredicateTransformer {
    pub fn from_fn(n: usize, mut f: impl FnMut(u64) -> u64) -> Self {
        assert!(n <= 16);
        let mask = (1u64 << n) - 1;
        let table = (0..1u64 << n).map(|p| f(p) & mask).collect();
        PredicateTransformer { n, table }
    }

    pub fn id(n: usize) -> Self {
        PredicateTransformer::from_fn(n, |p| p)
    }

    pub fn constant(n: usize, c: u64) -> Self {
        PredicateTransformer::from_fn(n, |_| c)
    }

    pub fn base_size(&self) -> usize {
        self.n
    }

    pub fn apply(&self, p: u64) -> u64 {
        self.table[p as usize]
    }

    pub fn join(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        PredicateTransformer::from_fn(self.n, |p| self.apply(p) | other.apply(p))
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_isotone(&self) -> bool {
        // p ⊆ p ∪ {x} suffices by induction on added points.
        (0..self.table.len() as u64).all(|p| {
            (0..self.n).all(|x| {
                p >> x & 1 == 1 || self.apply(p) & !self.apply(p | 1 << x) == 0
            })
        })
    }
}

/// Composition (f∘g) p = f (g p).
pub fn pt_compose(f: &PredicateTransformer, g: &PredicateTransformer) -> PredicateTransformer {
    assert_eq!(f.n, g.n);
    PredicateTransformer::from_fn(f.n, |p| f.apply(g.apply(p)))
}

/// Kleisli lift f̂ Y = {x | f x is defined and f x ⊆ Y}; faulting states
/// satisfy no postcondition.
pub fn kleisli_lift(f: &StateTransformer) -> PredicateTransformer {
    PredicateTransformer::from_fn(f.n, |y| {
        (0..f.n).fold(0u64, |m, x| match f.apply(x) {
            Some(s) if s & !y == 0 => m | 1 << x,
            _ => m,
        })
    })
}

/// The complex-product monoid 2^S of a base carrier, with the transformer
/// machinery built over it.
pub struct TransformerSpace {
    base_size: usize,
    monoid: Carrier,
    target: PowersetQ,
}

const BASE_BOUND: usize = 9;

impl TransformerSpace {
    pub fn new(base: &Carrier) -> Result<Self, AlgebraError> {
        if base.size() > BASE_BOUND {
            return Err(AlgebraError::SizeBound {
                what: "transformer base monoid".to_string(),
                size: base.size(),
                bound: BASE_BOUND,
            });
        }
        let target = PowersetQ::new(base);
        let n = 1usize << base.size();
        let prod =
            |x: usize, y: usize| target.product(x as u64, y as u64) as usize;
        // The complex product is unital iff some set is a two-sided unit
        // (the singleton of a base unit, or e.g. the diagonal relation).
        let unit = (0..n).find(|e| (0..n).all(|x| prod(*e, x) == x && prod(x, *e) == x));
        let mut b = CarrierBuilder::new(n);
        for x in 0..n {
            for y in 0..n {
                b.set(Element(x as u32), Element(y as u32), Element(prod(x, y) as u32));
            }
        }
        let mut b = b.commutative_hint(base.commutative_hint());
        if let Some(e) = unit {
            b = b.unit(Element(e as u32));
        }
        let monoid = b.build();
        Ok(TransformerSpace {
            base_size: base.size(),
            monoid,
            target,
        })
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn predicate_count(&self) -> usize {
        self.monoid.size()
    }

    pub fn monoid(&self) -> &Carrier {
        &self.monoid
    }

    pub fn target(&self) -> &PowersetQ {
        &self.target
    }

    /// Complex product of two predicates.
    pub fn star(&self, p: u64, q: u64) -> u64 {
        self.target.product(p, q)
    }

    pub fn to_series(&self, f: &PredicateTransformer) -> PowerSeries<PowersetQ> {
        PowerSeries::from_fn(&self.monoid, |p| Some(f.apply(p.index() as u64)))
    }

    pub fn from_series(&self, s: &PowerSeries<PowersetQ>) -> PredicateTransformer {
        PredicateTransformer::from_fn(self.base_size, |p| {
            s.get(Element(p as u32)).clone().unwrap()
        })
    }

    /// Convolution on the transformer space: (f∗g) r = Σ_{r=p∗q} (f p)∗(g q).
    pub fn pt_convolve(
        &self,
        f: &PredicateTransformer,
        g: &PredicateTransformer,
    ) -> PredicateTransformer {
        let s = convolve(&self.monoid, &self.target, &self.to_series(f), &self.to_series(g))
            .expect("powerset target is total");
        self.from_series(&s)
    }

    /// f∗id ≤ f; returns the first violating predicate otherwise.
    pub fn is_local(&self, f: &PredicateTransformer) -> (bool, Option<u64>) {
        let fid = self.pt_convolve(f, &PredicateTransformer::id(self.base_size));
        for p in 0..1u64 << self.base_size {
            if fid.apply(p) & !f.apply(p) != 0 {
                return (false, Some(p));
            }
        }
        (true, None)
    }

    /// (f p)∗q ≤ f (p∗q); returns the first violating pair otherwise.
    pub fn is_local_pointwise(&self, f: &PredicateTransformer) -> (bool, Option<(u64, u64)>) {
        let n = 1u64 << self.base_size;
        for p in 0..n {
            let fp = f.apply(p);
            for q in 0..n {
                if self.star(fp, q) & !f.apply(self.star(p, q)) != 0 {
                    return (false, Some((p, q)));
                }
            }
        }
        (true, None)
    }

    /// For local f: does (p ≤ f q) imply (p∗r ≤ f (q∗r))?
    pub fn frame_check(
        &self,
        f: &PredicateTransformer,
        p: u64,
        q: u64,
        r: u64,
    ) -> Result<bool, AlgebraError> {
        if !self.is_local(f).0 {
            return Err(AlgebraError::InvalidSpec(
                "frame rule requires a local transformer".to_string(),
            ));
        }
        Ok(self.frame_holds(f, p, q, r))
    }

    fn frame_holds(&self, f: &PredicateTransformer, p: u64, q: u64, r: u64) -> bool {
        p & !f.apply(q) != 0 || self.star(p, r) & !f.apply(self.star(q, r)) == 0
    }

    /// Exhaustive frame sweep with q fixed: every (p, r) pair must satisfy
    /// the frame implication. Returns the first violating pair, if any.
    pub fn frame_sweep(&self, f: &PredicateTransformer, q: u64) -> Option<(u64, u64)> {
        let n = 1u64 << self.base_size;
        let fq = f.apply(q);
        for p in 0..n {
            if p & !fq != 0 {
                continue;
            }
            for r in 0..n {
                if self.star(p, r) & !f.apply(self.star(q, r)) != 0 {
                    return Some((p, r));
                }
            }
        }
        None
    }
}

/// Heap commands over the `make_heaplet(locations, values)` carrier
/// encoding (digit 0 = absent, digit d ≥ 1 = value d−1).

fn heap_digit(state: usize, radix: usize, loc: usize) -> usize {
    state / radix.pow(loc as u32) % radix
}

/// [loc] := val; faults when loc is unallocated.
pub fn heap_write(locations: usize, values: usize, loc: usize, val: usize) -> StateTransformer {
    let radix = values + 1;
    StateTransformer::from_fn(radix.pow(locations as u32), |m| {
        let d = heap_digit(m, radix, loc);
        if d == 0 {
            None
        } else {
            let scale = radix.pow(loc as u32);
            Some(1u64 << (m - d * scale + (val + 1) * scale))
        }
    })
}

/// Skip when loc is allocated; faults otherwise.
pub fn heap_read_guard(locations: usize, values: usize, loc: usize) -> StateTransformer {
    let radix = values + 1;
    StateTransformer::from_fn(radix.pow(locations as u32), |m| {
        if heap_digit(m, radix, loc) == 0 {
            None
        } else {
            Some(1u64 << m)
        }
    })
}

/// Allocate some free location and initialise it to 0; blocks (no
/// outcomes) when the heap is full.
pub fn heap_alloc(locations: usize, values: usize) -> StateTransformer {
    let radix = values + 1;
    StateTransformer::from_fn(radix.pow(locations as u32), |m| {
        let mut out = 0u64;
        for loc in 0..locations {
            if heap_digit(m, radix, loc) == 0 {
                out |= 1u64 << (m + radix.pow(loc as u32));
            }
        }
        Some(out)
    })
}

/// Every state may move to any state.
pub fn havoc(n: usize) -> StateTransformer {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    StateTransformer::from_fn(n, |_| Some(full))
}

/// Faults everywhere; its lift is the constant-∅ transformer.
pub fn fail_all(n: usize) -> StateTransformer {
    StateTransformer::from_fn(n, |_| None)
}

/// No outcomes anywhere; its lift is the constant-full transformer.
pub fn magic_all(n: usize) -> StateTransformer {
    StateTransformer::from_fn(n, |_| Some(0))
}

/// Seeded isotone table: random raw entries closed upward by union over
/// subsets.
pub fn random_isotone(n: usize, rng: &mut dyn rand::RngCore) -> PredicateTransformer {
    use rand::Rng;
    let mask = (1u64 << n) - 1;
    let mut table: Vec<u64> = (0..1usize << n)
        .map(|_| rng.gen::<u64>() & mask)
        .collect();
    for b in 0..n {
        for p in 0..table.len() {
            if p >> b & 1 == 1 {
                table[p] |= table[p ^ (1 << b)];
            }
        }
    }
    PredicateTransformer { n, table }
}

/// The named generator family: Kleisli lifts of heap primitives,
/// identity, constants, pairwise joins, and seeded isotone tables.
pub fn generate_transformers(
    locations: usize,
    values: usize,
    random_count: usize,
    seed: u64,
) -> Vec<(String, PredicateTransformer)> {
    use rand::SeedableRng;
    let n = (values + 1).pow(locations as u32);
    let mut out: Vec<(String, PredicateTransformer)> = Vec::new();
    for loc in 0..locations {
        for val in 0..values {
            out.push((
                format!("lift(write l{}↦{val})", loc + 1),
                kleisli_lift(&heap_write(locations, values, loc, val)),
            ));
        }
        out.push((
            format!("lift(read l{})", loc + 1),
            kleisli_lift(&heap_read_guard(locations, values, loc)),
        ));
    }
    out.push(("lift(alloc)".to_string(), kleisli_lift(&heap_alloc(locations, values))));
    out.push(("id".to_string(), PredicateTransformer::id(n)));
    out.push(("lift(fail)".to_string(), kleisli_lift(&fail_all(n))));
    out.push(("lift(magic)".to_string(), kleisli_lift(&magic_all(n))));
    out.push(("lift(havoc)".to_string(), kleisli_lift(&havoc(n))));
    out.push(("const(∅)".to_string(), PredicateTransformer::constant(n, 0)));
    out.push((
        "const(unit)".to_string(),
        PredicateTransformer::constant(n, 1),
    ));
    let pairs: Vec<(String, PredicateTransformer)> = out
        .windows(2)
        .map(|w| {
            (
                format!("{} ∨ {}", w[0].0, w[1].0),
                w[0].1.join(&w[1].1),
            )
        })
        .collect();
    out.extend(pairs);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random_count {
        out.push((format!("isotone#{i}"), random_isotone(n, &mut rng)));
    }
    out
}

/// A lift f̂ is completely multiplicative iff it has a kernel K with
/// f̂ Y = {x | K(x) ⊆ Y}: then f̂ of any meet is the meet of the f̂-images,
/// for families of every size at once. This verifies that characterization
/// exhaustively over all predicates, then spot-checks explicit families.
fn completely_multiplicative(
    f: &PredicateTransformer,
    tuples: &mut u64,
) -> Option<Vec<String>> {
    let n = f.base_size();
    let preds = 1u64 << n;
    let full = preds - 1;
    // K(x) = ⋀{Y | x ∈ f̂ Y}, with "no Y" tracked separately.
    let mut kernel = vec![None::<u64>; n];
    for y in 0..preds {
        *tuples += 1;
        let img = f.apply(y);
        for (x, k) in kernel.iter_mut().enumerate() {
            if img >> x & 1 == 1 {
                *k = Some(k.unwrap_or(full) & y);
            }
        }
    }
    for y in 0..preds {
        *tuples += 1;
        let expect = (0..n).fold(0u64, |m, x| match kernel[x] {
            Some(k) if k & !y == 0 => m | 1 << x,
            _ => m,
        });
        if f.apply(y) != expect {
            return Some(vec![
                format!("Y={y:#b}"),
                format!("f̂Y={:#b}", f.apply(y)),
                format!("kernel image={expect:#b}"),
            ]);
        }
    }
    None
}

/// Transformer-suite reports over the heaplet base of the given shape:
/// complete multiplicativity of Kleisli lifts (families 0–3), agreement of
/// the two locality forms on the generated family, and the full lifted-law
/// suite on the complex-product monoid 2^S.
pub fn check_transformer_laws(
    locations: usize,
    values: usize,
    config: &SuiteConfig,
) -> Result<Vec<LawReport>, AlgebraError> {
    use crate::report::CheckMode;
    use rand::{Rng, SeedableRng};
    let base = crate::instances::make_heaplet(locations, values)?;
    let space = TransformerSpace::new(&base)?;
    let n = space.base_size();
    let mut reports = Vec::new();

    // Complete multiplicativity of lifts of total state transformers
    // (the S → 2^S type of the lifting statement: alloc, havoc, magic,
    // seeded relations). Faulting primitives like heap writes are not of
    // this type — they drop out of every postcondition, refuting the
    // empty meet — and are covered by the locality and frame laws.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
    let mut lifts: Vec<PredicateTransformer> = vec![
        kleisli_lift(&heap_alloc(locations, values)),
        kleisli_lift(&havoc(n)),
        kleisli_lift(&magic_all(n)),
    ];
    for _ in 0..8 {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.2))
            .collect();
        lifts.push(kleisli_lift(&transformer_of_relation(n, &pairs)));
    }
    let mut tuples = 0u64;
    let mut witness = None;
    let full = (1u64 << n) - 1;
    'mult: for fh in &lifts {
        if let Some(w) = completely_multiplicative(fh, &mut tuples) {
            witness = Some(w);
            break;
        }
        // Explicit family spot checks at every size the kernel argument
        // subsumes: 0 (the empty meet is ⊤), 1, 2 and 3.
        for _ in 0..(config.budget / (lifts.len() as u64 * 2)).min(2_000) {
            let k = rng.gen_range(0..=3usize);
            let fam: Vec<u64> = (0..k).map(|_| rng.gen::<u64>() & full).collect();
            tuples += 1;
            let lhs = fh.apply(fam.iter().fold(full, |m, y| m & y));
            let rhs = fam.iter().fold(full, |m, y| m & fh.apply(*y));
            if lhs != rhs {
                witness = Some(vec![
                    format!("family={fam:?}"),
                    format!("f̂(⋀)={lhs:#b}"),
                    format!("⋀f̂={rhs:#b}"),
                ]);
                break 'mult;
            }
        }
    }
    reports.push(match witness {
        None => LawReport::pass("kleisli-completely-multiplicative", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("kleisli-completely-multiplicative", tuples, CheckMode::Exhaustive, w),
    });

    // The two locality forms agree across the generated family, which
    // must contain both local members and non-local controls.
    let fam = generate_transformers(locations, values, 36, config.seed);
    let mut tuples = 0u64;
    let mut witness = None;
    let (mut locals, mut nonlocals) = (0u32, 0u32);
    for (name, t) in &fam {
        tuples += 1;
        let (a, _) = space.is_local(t);
        let (b, wb) = space.is_local_pointwise(t);
        if a != b {
            witness = Some(vec![
                format!("transformer={name}"),
                format!("is_local={a}"),
                format!("is_local_pointwise={b} ({wb:?})"),
            ]);
            break;
        }
        if a {
            locals += 1;
        } else {
            nonlocals += 1;
        }
    }
    if witness.is_none() && (locals < 5 || nonlocals < 5) {
        witness = Some(vec![format!(
            "family lacks controls: {locals} local, {nonlocals} non-local"
        )]);
    }
    reports.push(match witness {
        None => LawReport::pass("locality-forms-agree", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("locality-forms-agree", tuples, CheckMode::Exhaustive, w),
    });

    // Lifted-law suite on the complex-product monoid, with sampled tuples:
    // convolution there runs over all 2^S × 2^S splittings, so exhaustive
    // pool sweeps are reserved for the small bases.
    let monoid_config = if space.monoid().size() > 64 {
        SuiteConfig {
            budget: config.budget.min(400),
            seed: config.seed,
            exhaustive_bound: 0,
        }
    } else {
        *config
    };
    let unit = crate::series::unit_series(space.monoid(), space.target())?;
    let suite = crate::series::LiftedSuite::total(
        space.monoid(),
        space.target(),
        Some(unit),
        base.commutative_hint(),
        monoid_config,
    );
    for mut r in suite.run() {
        r.law = format!("transformer-monoid-{}", r.law);
        reports.push(r);
    }
    Ok(reports)
}

/// Frame-rule reports over the heaplet base: heap-write locality, the
/// exhaustive frame sweep (all pre/frame pairs for the written-cell
/// postcondition, then every local generated transformer), and the magic
/// wand adjunction on the lifted heaplet algebra.
pub fn check_frame_laws(
    locations: usize,
    values: usize,
    config: &SuiteConfig,
) -> Result<Vec<LawReport>, AlgebraError> {
    use crate::report::CheckMode;
    use crate::value::BoolQ;
    let base = crate::instances::make_heaplet(locations, values)?;
    let space = TransformerSpace::new(&base)?;
    let n = space.base_size();
    let preds = 1u64 << n;
    let mut reports = Vec::new();

    // Every heap write is local in both senses.
    let mut tuples = 0u64;
    let mut witness = None;
    'writes: for loc in 0..locations {
        for val in 0..values {
            tuples += 1;
            let w = kleisli_lift(&heap_write(locations, values, loc, val));
            let (a, wa) = space.is_local(&w);
            let (b, wb) = space.is_local_pointwise(&w);
            if !a || !b {
                witness = Some(vec![
                    format!("write l{}↦{val}", loc + 1),
                    format!("is_local={a} ({wa:?})"),
                    format!("pointwise={b} ({wb:?})"),
                ]);
                break 'writes;
            }
        }
    }
    reports.push(match witness {
        None => LawReport::pass("heap-write-locality", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("heap-write-locality", tuples, CheckMode::Exhaustive, w),
    });

    // Exhaustive frame sweep: heap write against the written-cell
    // postcondition over every (precondition, frame) pair, then every
    // local member of the generated family.
    let radix = values + 1;
    let digit = |s: usize, loc: usize| s / radix.pow(loc as u32) % radix;
    let mut tuples = 0u64;
    let mut witness = None;
    let w = kleisli_lift(&heap_write(locations, values, 0, values - 1));
    let q = (0..n).fold(0u64, |m, s| {
        if digit(s, 0) == values { m | 1 << s } else { m }
    });
    tuples += preds * preds;
    if let Some((p, r)) = space.frame_sweep(&w, q) {
        witness = Some(vec![
            format!("transformer=lift(write l1↦{})", values - 1),
            format!("p={p:#b}"),
            format!("r={r:#b}"),
        ]);
    }
    if witness.is_none() {
        for (name, t) in generate_transformers(locations, values, 10, config.seed) {
            if space.is_local(&t).0 {
                tuples += preds * preds;
                if let Some((p, r)) = space.frame_sweep(&t, q) {
                    witness = Some(vec![
                        format!("transformer={name}"),
                        format!("p={p:#b}"),
                        format!("r={r:#b}"),
                    ]);
                    break;
                }
            }
        }
    }
    reports.push(match witness {
        None => LawReport::pass("frame-sweep", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("frame-sweep", tuples, CheckMode::Exhaustive, w),
    });

    // Wand adjunction on the lifted heaplet algebra: for Boolean targets
    // f∗h ≤ g ⟺ h ≤ (f -∗ g) for all h iff (f -∗ g) is exactly the union
    // of the atoms x with f∗{x} ≤ g (isotony supplies the ⟸ direction),
    // so checking that equality over every (f, g) pair is exhaustive over
    // all families.
    let q = BoolQ;
    let mut tuples = 0u64;
    let mut witness = None;
    let all: Vec<crate::series::PowerSeries<BoolQ>> = (0..preds)
        .map(|m| crate::series::PowerSeries::from_fn(&base, |x| Some(m >> x.index() & 1 == 1)))
        .collect();
    'wand: for (fi, f) in all.iter().enumerate() {
        // f∗{x} for each atom x, computed once per f.
        let atom_conv: Vec<crate::series::PowerSeries<BoolQ>> = (0..n)
            .map(|x| {
                let atom = crate::series::PowerSeries::from_fn(&base, |e| {
                    Some(e.index() == x)
                });
                crate::series::convolve(&base, &q, f, &atom).expect("total series")
            })
            .collect();
        for (gi, g) in all.iter().enumerate() {
            tuples += 1;
            let wd = crate::series::wand(&base, &q, f, g)?;
            let fw = crate::series::convolve(&base, &q, f, &wd)?;
            if !crate::series::series_leq(&base, &q, &fw, g) {
                witness = Some(vec![
                    format!("f={fi:#b}"),
                    format!("g={gi:#b}"),
                    "f∗(f -∗ g) ≰ g".to_string(),
                ]);
                break 'wand;
            }
            for x in 0..n {
                let good = crate::series::series_leq(&base, &q, &atom_conv[x], g);
                let inw = *wd.get(crate::algebra::Element(x as u32)) == Some(true);
                if good != inw {
                    witness = Some(vec![
                        format!("f={fi:#b}"),
                        format!("g={gi:#b}"),
                        format!("atom={}", base.label(crate::algebra::Element(x as u32))),
                        format!("f∗atom ≤ g is {good} but wand bit is {inw}"),
                    ]);
                    break 'wand;
                }
            }
        }
    }
    reports.push(match witness {
        None => LawReport::pass("wand-adjunction", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("wand-adjunction", tuples, CheckMode::Exhaustive, w),
    });
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{make_heaplet, make_relation};
    use crate::report::LawStatus;
    use crate::series::{LiftedSuite, SuiteConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heap_space() -> TransformerSpace {
        TransformerSpace::new(&make_heaplet(2, 2).unwrap()).unwrap()
    }

    #[test]
    fn relation_transformer_examples() {
        // Two states s1, s2; R = {(s1,s2)}.
        let f = transformer_of_relation(2, &[(0, 1)]);
        assert_eq!(f.apply(0), Some(0b10));
        assert_eq!(f.apply(1), Some(0));
        let empty = transformer_of_relation(2, &[]);
        assert_eq!(empty.apply(0), Some(0));
        let id = transformer_of_relation(2, &[(0, 0), (1, 1)]);
        assert_eq!(id.apply(1), Some(0b10));
        // Lifts: f̂ {s2} = {s1, s2}; f̂ S = S; f̂ ∅ = {x | f x = ∅}.
        let fh = kleisli_lift(&f);
        assert_eq!(fh.apply(0b10), 0b11);
        assert_eq!(fh.apply(0b11), 0b11);
        assert_eq!(fh.apply(0), 0b10);
        assert_eq!(kleisli_lift(&id), PredicateTransformer::id(2));
    }

    #[test]
    fn kleisli_completely_multiplicative() {
        // Relation-based lifts preserve meets of families of size 0–3;
        // the empty family is the full predicate.
        let n = 9;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(0.2))
                .collect();
            let fh = kleisli_lift(&transformer_of_relation(n, &pairs));
            let full = (1u64 << n) - 1;
            assert_eq!(fh.apply(full), full);
            for _ in 0..10 {
                let fam: Vec<u64> = (0..rng.gen_range(1..=3))
                    .map(|_| rng.gen::<u64>() & full)
                    .collect();
                let meet_then_lift = fh.apply(fam.iter().fold(full, |m, y| m & y));
                let lift_then_meet = fam.iter().fold(full, |m, y| m & fh.apply(*y));
                assert_eq!(meet_then_lift, lift_then_meet);
            }
        }
    }

    #[test]
    fn lifts_are_isotone() {
        for (name, t) in generate_transformers(2, 2, 10, 7) {
            assert!(t.is_isotone(), "{name} not isotone");
        }
    }

    #[test]
    fn compose_quantale_laws() {
        // Composition: associativity, unit, and the one-sided
        // distributivity that holds for arbitrary transformers.
        let fam: Vec<PredicateTransformer> = generate_transformers(2, 2, 6, 13)
            .into_iter()
            .map(|(_, t)| t)
            .collect();
        let id = PredicateTransformer::id(9);
        for f in &fam {
            assert_eq!(pt_compose(&id, f), *f);
            assert_eq!(pt_compose(f, &id), *f);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let f = &fam[rng.gen_range(0..fam.len())];
            let g = &fam[rng.gen_range(0..fam.len())];
            let h = &fam[rng.gen_range(0..fam.len())];
            assert_eq!(
                pt_compose(&pt_compose(f, g), h),
                pt_compose(f, &pt_compose(g, h))
            );
            // (f ∨ g) ∘ h = f∘h ∨ g∘h holds for all transformers.
            assert_eq!(
                pt_compose(&f.join(g), h),
                pt_compose(f, h).join(&pt_compose(g, h))
            );
        }
    }

    #[test]
    fn weak_biquantale_left_distributivity_fails() {
        // Some non-additive f with f∘(g₁∨g₂) ≠ (f∘g₁)∨(f∘g₂).
        let fam = generate_transformers(2, 2, 6, 13);
        let mut witness = None;
        'outer: for (fname, f) in &fam {
            for (gname, g) in &fam {
                for (hname, h) in &fam {
                    if pt_compose(f, &g.join(h)) != pt_compose(f, g).join(&pt_compose(f, h)) {
                        witness = Some((fname.clone(), gname.clone(), hname.clone()));
                        break 'outer;
                    }
                }
            }
        }
        assert!(witness.is_some(), "left distributivity failure not found");
    }

    #[test]
    fn pt_convolve_id_id_matches_brute_force() {
        let space = heap_space();
        let id = PredicateTransformer::id(space.base_size());
        let conv = space.pt_convolve(&id, &id);
        let n = 1u64 << space.base_size();
        for r in 0..n {
            let mut expect = 0u64;
            for p in 0..n {
                for q in 0..n {
                    if space.star(p, q) == r {
                        expect |= space.star(id.apply(p), id.apply(q));
                    }
                }
            }
            assert_eq!(conv.apply(r), expect);
            assert_eq!(conv.apply(r), r);
        }
    }

    #[test]
    fn convolution_unit_transformer() {
        // 𝟙 = char{{e}} is the ∗-unit on sampled transformers.
        let space = heap_space();
        let n = space.base_size();
        let one = PredicateTransformer::from_fn(n, |p| if p == 1 { 1 } else { 0 });
        for (name, t) in generate_transformers(2, 2, 3, 19) {
            assert_eq!(space.pt_convolve(&one, &t), t, "left unit at {name}");
            assert_eq!(space.pt_convolve(&t, &one), t, "right unit at {name}");
        }
    }

    #[test]
    fn pt_convolve_assoc_and_comm_sampled() {
        let space = heap_space();
        let fam: Vec<PredicateTransformer> = generate_transformers(2, 2, 2, 3)
            .into_iter()
            .map(|(_, t)| t)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let f = &fam[rng.gen_range(0..fam.len())];
            let g = &fam[rng.gen_range(0..fam.len())];
            let h = &fam[rng.gen_range(0..fam.len())];
            assert_eq!(
                space.pt_convolve(&space.pt_convolve(f, g), h),
                space.pt_convolve(f, &space.pt_convolve(g, h))
            );
            assert_eq!(space.pt_convolve(f, g), space.pt_convolve(g, f));
        }
    }

    #[test]
    fn transformer_space_lifted_suite_small_base() {
        // Full lifted suite on the 2^S monoid of a 3-element heaplet base.
        let base = make_heaplet(1, 2).unwrap();
        let space = TransformerSpace::new(&base).unwrap();
        let unit = crate::series::unit_series(space.monoid(), space.target()).unwrap();
        let suite = LiftedSuite::total(
            space.monoid(),
            space.target(),
            Some(unit),
            true,
            SuiteConfig::default(),
        );
        for r in suite.run() {
            assert_eq!(r.status, LawStatus::Pass, "{}: {:?}", r.law, r.witness);
        }
    }

    #[test]
    fn locality_agreement_on_generated_family() {
        let space = heap_space();
        let fam = generate_transformers(2, 2, 36, 41);
        assert!(fam.len() >= 50);
        let mut locals = 0;
        let mut nonlocals = 0;
        for (name, t) in &fam {
            let (a, _) = space.is_local(t);
            let (b, w) = space.is_local_pointwise(t);
            assert_eq!(a, b, "locality forms disagree on {name} ({w:?})");
            if a {
                locals += 1;
            } else {
                nonlocals += 1;
            }
        }
        assert!(locals >= 5, "family has too few local members");
        assert!(nonlocals >= 5, "family has too few non-local controls");
    }

    #[test]
    fn heap_write_is_local_havoc_is_not() {
        let space = heap_space();
        let w = kleisli_lift(&heap_write(2, 2, 0, 1));
        assert_eq!(space.is_local(&w), (true, None));
        assert_eq!(space.is_local_pointwise(&w), (true, None));
        let id = PredicateTransformer::id(space.base_size());
        assert_eq!(space.is_local(&id), (true, None));
        let top_test = kleisli_lift(&havoc(space.base_size()));
        let (local, witness) = space.is_local(&top_test);
        assert!(!local);
        assert!(witness.is_some());
        // A constant proper predicate is not local either.
        let (local, _) = space.is_local(&PredicateTransformer::constant(space.base_size(), 1));
        assert!(!local);
    }

    #[test]
    fn frame_rule_heap_write() {
        let space = heap_space();
        let w = kleisli_lift(&heap_write(2, 2, 0, 1));
        // Heaplet digits: state = d1 + 3·d2, d = 0 absent, v+1 present.
        let n = 1u64 << space.base_size();
        let states = |pred: &dyn Fn(usize) -> bool| {
            (0..space.base_size()).fold(0u64, |m, s| if pred(s) { m | 1 << s } else { m })
        };
        let p = states(&|s| s % 3 != 0);
        let q = states(&|s| s % 3 == 2);
        let r = states(&|s| s / 3 == 1);
        // Premise p ≤ ŵ q holds, so the framed conclusion must hold.
        assert_eq!(w.apply(q), p);
        assert!(space.frame_check(&w, p, q, r).unwrap());
        // Vacuous premise.
        assert!(space.frame_check(&w, n - 1, 0, r).unwrap());
        // Non-local transformers are rejected.
        let top_test = kleisli_lift(&havoc(space.base_size()));
        assert!(matches!(
            space.frame_check(&top_test, p, q, r),
            Err(AlgebraError::InvalidSpec(_))
        ));
    }

    #[test]
    fn frame_sweep_512x512() {
        let space = heap_space();
        let w = kleisli_lift(&heap_write(2, 2, 0, 1));
        let q = (0..space.base_size()).fold(0u64, |m, s| if s % 3 == 2 { m | 1 << s } else { m });
        assert_eq!(space.frame_sweep(&w, q), None);
        // Every local generator passes the sweep for this q; non-local
        // ones are exempt (the rule is only derived under locality).
        for (name, t) in generate_transformers(2, 2, 10, 29) {
            if space.is_local(&t).0 {
                assert_eq!(space.frame_sweep(&t, q), None, "sweep failed for {name}");
            }
        }
    }

    #[test]
    fn relation_base_monoid_has_diagonal_unit() {
        // The complex-product monoid over pairs is unital even though the
        // pair carrier itself is not: the unit is the diagonal set.
        let base = make_relation(3).unwrap();
        let space = TransformerSpace::new(&base).unwrap();
        let unit = space.monoid().unit().unwrap();
        let diag: u64 = (0..3).fold(0, |m, i| m | 1 << (i * 3 + i));
        assert_eq!(unit.index() as u64, diag);
    }

    #[test]
    fn transformer_suite_reports_pass() {
        let reports = check_transformer_laws(2, 2, &SuiteConfig::default()).unwrap();
        assert!(reports.iter().any(|r| r.law == "kleisli-completely-multiplicative"));
        assert!(reports.iter().any(|r| r.law == "locality-forms-agree"));
        assert!(reports.iter().any(|r| r.law.starts_with("transformer-monoid-")));
        for r in &reports {
            assert_ne!(r.status, LawStatus::Fail, "{}: {:?}", r.law, r.witness);
        }
    }

    #[test]
    fn frame_suite_reports_pass() {
        let reports = check_frame_laws(2, 2, &SuiteConfig::default()).unwrap();
        let by_law = |law: &str| reports.iter().find(|r| r.law == law).unwrap();
        for r in &reports {
            assert_eq!(r.status, LawStatus::Pass, "{}: {:?}", r.law, r.witness);
        }
        // The sweep covers at least the full 512×512 grid, the adjunction
        // every (f, g) pair.
        assert!(by_law("frame-sweep").tuples_checked >= 512 * 512);
        assert_eq!(by_law("wand-adjunction").tuples_checked, 512 * 512);
    }

    #[test]
    fn corrupted_transformer_fails_both_locality_forms() {
        let space = heap_space();
        let w = kleisli_lift(&heap_write(2, 2, 0, 1));
        let full = (1u64 << space.base_size()) - 1;
        // Raising the value at the unit-singleton predicate leaks through
        // every splitting r = {e}∗q.
        let bad = PredicateTransformer::from_fn(space.base_size(), |p| {
            if p == 1 {
                full
            } else {
                w.apply(p)
            }
        });
        let (a, wa) = space.is_local(&bad);
        let (b, wb) = space.is_local_pointwise(&bad);
        assert!(!a && !b);
        assert!(wa.is_some() && wb.is_some());
    }
}
