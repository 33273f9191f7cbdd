//! Futuristic partial semigroups: carriers split into bounded and
//! unbounded elements, where unbounded elements compose with nothing on
//! their right.
//!
//! Convolution gains an extra summand at unbounded points:
//!
//! ```text
//! (f · g) x = Σ_{x = y·z} f y · g z  +  (f x  if x unbounded, else 0)
//! ```
//!
//! The lifted algebra is still a quantale, but 𝕆 is no longer a right
//! annihilator and left distributivity holds only for non-empty
//! families — both failures carry stored witnesses. On a carrier with no
//! unbounded elements the extra summand vanishes and everything reduces
//! to the ordinary lifting.

use std::collections::HashMap;

use crate::algebra::{Boundedness, Carrier, CarrierBuilder, Element};
use crate::error::AlgebraError;
use crate::report::{CheckMode, LawReport};
use crate::series::{sum_family, zero_series, PowerSeries, SuiteConfig};
use crate::value::Quantale;

const CARRIER_BOUND: usize = 1024;

fn guard_size(what: &str, size: usize) -> Result<(), AlgebraError> {
    if size > CARRIER_BOUND {
        return Err(AlgebraError::SizeBound {
            what: what.into(),
            size,
            bound: CARRIER_BOUND,
        });
    }
    Ok(())
}

/// The futuristic carrier invariants: the carrier is fully classified
/// into bounded/unbounded, unbounded elements are left-absorbing into ⊥,
/// and bounded products have bounded left factors.
pub fn check_futuristic_invariants(c: &Carrier) -> Vec<LawReport> {
    let mut reports = Vec::new();
    let classified = c.is_classified();
    reports.push(if classified {
        LawReport::pass("classification-total", c.size() as u64, CheckMode::Exhaustive)
    } else {
        LawReport::fail(
            "classification-total",
            c.size() as u64,
            CheckMode::Exhaustive,
            vec!["carrier lacks a bounded/unbounded classification".into()],
        )
    });
    if !classified {
        reports.push(LawReport::skipped("unbounded-composes-to-undefined"));
        reports.push(LawReport::skipped("bounded-product-has-bounded-left"));
        return reports;
    }
    let mut w1 = None;
    let mut w2 = None;
    let mut tuples = 0u64;
    for x in c.elements() {
        for y in c.elements() {
            tuples += 1;
            let z = c.compose(x, y).element();
            if c.classification(x) == Some(Boundedness::Unbounded) && z.is_some() && w1.is_none() {
                w1 = Some(vec![c.label(x), c.label(y)]);
            }
            if let Some(z) = z {
                if c.classification(z) == Some(Boundedness::Bounded)
                    && c.classification(x) == Some(Boundedness::Unbounded)
                    && w2.is_none()
                {
                    w2 = Some(vec![c.label(x), c.label(y), c.label(z)]);
                }
            }
        }
    }
    reports.push(match w1 {
        None => LawReport::pass("unbounded-composes-to-undefined", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("unbounded-composes-to-undefined", tuples, CheckMode::Exhaustive, w),
    });
    reports.push(match w2 {
        None => LawReport::pass("bounded-product-has-bounded-left", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("bounded-product-has-bounded-left", tuples, CheckMode::Exhaustive, w),
    });
    reports
}

/// Convolution over a futuristic carrier: the ordinary splitting sum plus
/// `f x` at unbounded `x`.
pub fn futuristic_convolve<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    f: &PowerSeries<Q>,
    g: &PowerSeries<Q>,
) -> Result<PowerSeries<Q>, AlgebraError> {
    if !q.is_total() {
        return Err(AlgebraError::PartialTarget);
    }
    if !c.is_classified() {
        return Err(AlgebraError::InvalidSpec(
            "futuristic convolution needs a classified carrier".into(),
        ));
    }
    for s in [f, g] {
        if s.carrier_id() != c.id() {
            return Err(AlgebraError::MixedCarriers {
                left: s.carrier_id(),
                right: c.id(),
            });
        }
        if !s.is_total_valued() {
            return Err(AlgebraError::UndefinedValue {
                element: "futuristic series must be total-valued".into(),
            });
        }
    }
    let mut out = PowerSeries::constant(c, Some(q.bottom()));
    for x in c.elements() {
        let mut acc = q.bottom();
        for &(y, z) in c.splittings(x) {
            let a = f.get(y).as_ref().unwrap();
            let b = g.get(z).as_ref().unwrap();
            let p = q.mult(a, b).expect("total target");
            acc = q.join2(&acc, &p);
        }
        if c.classification(x) == Some(Boundedness::Unbounded) {
            acc = q.join2(&acc, f.get(x).as_ref().unwrap());
        }
        out.set(x, Some(acc));
    }
    Ok(out)
}

/// Finite words up to `finite_cap` (bounded) plus one ω-token per letter
/// (unbounded). Finite words concatenate with prefix truncation at the
/// cap; `v · ℓ^ω = ℓ^ω` for every finite `v`, and `ℓ^ω · anything = ⊥`.
///
/// The token `ℓ^ω` stands for the tail-equivalence class of infinite words
/// that are eventually `ℓℓℓ…`; prepending any finite word preserves that
/// tail, so absorption must not inspect `v`. Conditioning absorption on
/// `v ∈ ℓ*` would break associativity once truncation can turn a non-power
/// into a power: `(a·ab)·a^ω` would be `aa·a^ω = a^ω` while `a·(ab·a^ω)`
/// would be undefined.
pub fn make_infinite_words(alphabet: &[char], finite_cap: usize) -> Result<Carrier, AlgebraError> {
    if alphabet.is_empty() {
        return Err(AlgebraError::InvalidSpec("empty alphabet".into()));
    }
    let k = alphabet.len();
    let mut finite = 0usize;
    let mut pow = 1usize;
    for _ in 0..=finite_cap {
        finite += pow;
        pow = pow.saturating_mul(k);
        guard_size("infinite-words carrier", finite + k)?;
    }
    let total = finite + k;
    guard_size("infinite-words carrier", total)?;

    // Shortlex finite words, then the ω-tokens.
    let mut words: Vec<String> = vec![String::new()];
    let mut frontier: Vec<String> = vec![String::new()];
    for _ in 0..finite_cap {
        let mut next = Vec::new();
        for w in &frontier {
            for &ch in alphabet {
                let mut v = w.clone();
                v.push(ch);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    debug_assert_eq!(words.len(), finite);
    let index: HashMap<String, usize> =
        words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

    let mut bld = CarrierBuilder::new(total);
    for (i, v) in words.iter().enumerate() {
        // finite · finite: truncating concatenation.
        for (j, w) in words.iter().enumerate() {
            let mut vw = format!("{v}{w}");
            vw.truncate(finite_cap);
            bld.set(
                Element(i as u32),
                Element(j as u32),
                Element(index[&vw] as u32),
            );
        }
        // finite · ℓ^ω = ℓ^ω: the eventual tail is unchanged by any prefix.
        for t in 0..alphabet.len() {
            bld.set(
                Element(i as u32),
                Element((finite + t) as u32),
                Element((finite + t) as u32),
            );
        }
    }
    let mut labels: Vec<String> = words
        .iter()
        .map(|w| if w.is_empty() { "ε".into() } else { w.clone() })
        .collect();
    let mut classes = vec![Boundedness::Bounded; finite];
    for &ch in alphabet {
        labels.push(format!("{ch}^ω"));
        classes.push(Boundedness::Unbounded);
    }
    Ok(bld.labels(labels).classification(classes).build())
}

/// Closed intervals [a,b] over {0..chain−1} (bounded) plus futuristic
/// intervals [a,∞] (unbounded), fused on shared endpoints; unbounded
/// elements compose with nothing on their right.
pub fn make_futuristic_intervals(chain: usize) -> Result<Carrier, AlgebraError> {
    if chain == 0 {
        return Err(AlgebraError::InvalidSpec("chain must be non-empty".into()));
    }
    let mut bounded = Vec::new();
    for a in 0..chain {
        for b in a..chain {
            bounded.push((a, b));
        }
    }
    let nb = bounded.len();
    let total = nb + chain;
    guard_size("futuristic-interval carrier", total)?;
    let index: HashMap<(usize, usize), usize> = bounded
        .iter()
        .enumerate()
        .map(|(i, iv)| (*iv, i))
        .collect();
    let mut bld = CarrierBuilder::new(total);
    for (i, &(a, b)) in bounded.iter().enumerate() {
        for (j, &(c, d)) in bounded.iter().enumerate() {
            if b == c {
                bld.set(
                    Element(i as u32),
                    Element(j as u32),
                    Element(index[&(a, d)] as u32),
                );
            }
        }
        // [a,b]·[b,∞] = [a,∞].
        for c in 0..chain {
            if b == c {
                bld.set(
                    Element(i as u32),
                    Element((nb + c) as u32),
                    Element((nb + a) as u32),
                );
            }
        }
    }
    let mut labels: Vec<String> = bounded.iter().map(|(a, b)| format!("[{a},{b}]")).collect();
    let mut classes = vec![Boundedness::Bounded; nb];
    for a in 0..chain {
        labels.push(format!("[{a},∞]"));
        classes.push(Boundedness::Unbounded);
    }
    Ok(bld.labels(labels).classification(classes).build())
}

/// Rebuild a carrier with every element classified bounded — the
/// degenerate futuristic case, on which `futuristic_convolve` coincides
/// with ordinary convolution.
pub fn classify_bounded(c: &Carrier) -> Carrier {
    let mut b = CarrierBuilder::from_fn(c.size(), |x, y| {
        c.compose(Element(x as u32), Element(y as u32))
            .element()
            .map(Element::index)
    });
    if let Some(u) = c.unit() {
        b = b.unit(u);
    }
    b = b.labels((0..c.size()).map(|i| c.label(Element(i as u32))).collect());
    b = b.commutative_hint(c.commutative_hint());
    b.classification(vec![Boundedness::Bounded; c.size()]).build()
}

fn pool_for<Q: Quantale>(c: &Carrier, q: &Q) -> Vec<PowerSeries<Q>> {
    let mut pool = vec![
        zero_series(c, q),
        PowerSeries::constant(c, Some(q.top())),
    ];
    // A few characteristic atoms, making sure the unbounded region is
    // represented when present.
    let one = q.unit().unwrap_or_else(|| q.top());
    let mut atoms: Vec<Element> = Vec::new();
    let candidates = [
        c.elements()
            .find(|&x| c.classification(x) == Some(Boundedness::Unbounded)),
        Some(Element(0)),
        Some(Element((c.size() / 2) as u32)),
        Some(Element((c.size() - 1) as u32)),
    ];
    for a in candidates.into_iter().flatten() {
        if !atoms.contains(&a) {
            atoms.push(a);
        }
    }
    for a in atoms {
        let one = one.clone();
        pool.push(PowerSeries::from_fn(c, |x| {
            Some(if x == a { one.clone() } else { q.bottom() })
        }));
    }
    // A stripe, to exercise joins of products.
    pool.push(PowerSeries::from_fn(c, |x| {
        Some(if x.index() % 2 == 0 {
            q.top()
        } else {
            q.bottom()
        })
    }));
    pool
}

fn for_tuples(
    pool: usize,
    k: usize,
    config: &SuiteConfig,
    mut visit: impl FnMut(&[usize]) -> Option<Vec<String>>,
) -> (u64, CheckMode, Option<Vec<String>>) {
    let total = (pool as u128).pow(k as u32);
    if total <= config.budget as u128 {
        let mut idx = vec![0usize; k];
        let mut count = 0u64;
        loop {
            count += 1;
            if let Some(w) = visit(&idx) {
                return (count, CheckMode::Exhaustive, Some(w));
            }
            let mut p = k;
            loop {
                if p == 0 {
                    return (count, CheckMode::Exhaustive, None);
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < pool {
                    break;
                }
                idx[p] = 0;
            }
        }
    }
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
    let mut idx = vec![0usize; k];
    for count in 1..=config.budget {
        for slot in idx.iter_mut() {
            *slot = rng.gen_range(0..pool);
        }
        if let Some(w) = visit(&idx) {
            return (
                count,
                CheckMode::Sampled {
                    seed: config.seed,
                    count,
                },
                Some(w),
            );
        }
    }
    (
        config.budget,
        CheckMode::Sampled {
            seed: config.seed,
            count: config.budget,
        },
        None,
    )
}

/// The Lemma-pattern law suite for a futuristic carrier. Returns exactly
/// six reports: associativity, right distributivity (family sizes 0–3),
/// non-empty left distributivity (sizes 1–3), and left annihilation are
/// expected to pass; right annihilation and empty-family left
/// distributivity fail with a stored witness whenever the carrier has
/// unbounded elements (and pass on the bounded-only degenerate case).
pub fn check_futuristic_laws<Q: Quantale>(
    c: &Carrier,
    q: &Q,
    config: &SuiteConfig,
) -> Result<Vec<LawReport>, AlgebraError> {
    if !c.is_classified() {
        return Err(AlgebraError::InvalidSpec(
            "futuristic law suite needs a classified carrier".into(),
        ));
    }
    let pool = pool_for(c, q);
    let n = pool.len();
    let conv = |f: &PowerSeries<Q>, g: &PowerSeries<Q>| {
        futuristic_convolve(c, q, f, g).expect("validated pool")
    };
    let sum = |fs: &[&PowerSeries<Q>]| sum_family(c, q, fs).expect("validated pool");
    let zero = zero_series(c, q);
    let mut reports = Vec::new();

    let (t, m, w) = for_tuples(n, 3, config, |ix| {
        let (f, g, h) = (&pool[ix[0]], &pool[ix[1]], &pool[ix[2]]);
        if conv(&conv(f, g), h) == conv(f, &conv(g, h)) {
            None
        } else {
            Some(vec![format!("f@{}", ix[0]), format!("g@{}", ix[1]), format!("h@{}", ix[2])])
        }
    });
    reports.push(match w {
        None => LawReport::pass("futuristic-associativity", t, m),
        Some(w) => LawReport::fail("futuristic-associativity", t, m, w),
    });

    // Right distributivity over families of sizes 0–3.
    let mut tuples = 0u64;
    let mut witness = None;
    let mut mode = CheckMode::Exhaustive;
    for size in 0..=3usize {
        let (t, m, w) = for_tuples(n, size + 1, config, |ix| {
            let g = &pool[ix[0]];
            let fs: Vec<&PowerSeries<Q>> = ix[1..].iter().map(|&i| &pool[i]).collect();
            let lhs = conv(&sum(&fs), g);
            let parts: Vec<PowerSeries<Q>> = fs.iter().map(|f| conv(f, g)).collect();
            let rhs = sum(&parts.iter().collect::<Vec<_>>());
            if lhs == rhs {
                None
            } else {
                Some(vec![format!("size {size}")])
            }
        });
        tuples += t;
        if matches!(m, CheckMode::Sampled { .. }) {
            mode = m;
        }
        if witness.is_none() {
            witness = w;
        }
    }
    reports.push(match witness {
        None => LawReport::pass("futuristic-right-distributivity", tuples, mode),
        Some(w) => LawReport::fail("futuristic-right-distributivity", tuples, mode, w),
    });

    // Left distributivity over non-empty families (sizes 1–3).
    let mut tuples = 0u64;
    let mut witness = None;
    let mut mode = CheckMode::Exhaustive;
    for size in 1..=3usize {
        let (t, m, w) = for_tuples(n, size + 1, config, |ix| {
            let f = &pool[ix[0]];
            let gs: Vec<&PowerSeries<Q>> = ix[1..].iter().map(|&i| &pool[i]).collect();
            let lhs = conv(f, &sum(&gs));
            let parts: Vec<PowerSeries<Q>> = gs.iter().map(|g| conv(f, g)).collect();
            let rhs = sum(&parts.iter().collect::<Vec<_>>());
            if lhs == rhs {
                None
            } else {
                Some(vec![format!("size {size}")])
            }
        });
        tuples += t;
        if matches!(m, CheckMode::Sampled { .. }) {
            mode = m;
        }
        if witness.is_none() {
            witness = w;
        }
    }
    reports.push(match witness {
        None => LawReport::pass("futuristic-left-distributivity-nonempty", tuples, mode),
        Some(w) => LawReport::fail("futuristic-left-distributivity-nonempty", tuples, mode, w),
    });

    let (t, m, w) = for_tuples(n, 1, config, |ix| {
        if conv(&zero, &pool[ix[0]]) == zero {
            None
        } else {
            Some(vec![format!("f@{}", ix[0])])
        }
    });
    reports.push(match w {
        None => LawReport::pass("futuristic-left-annihilation", t, m),
        Some(w) => LawReport::fail("futuristic-left-annihilation", t, m, w),
    });

    // Right annihilation: f·𝕆 = 𝕆. Fails at any unbounded x with f x ≠ 0;
    // the report carries the witness point.
    let mut witness = None;
    let mut tuples = 0u64;
    for (i, f) in pool.iter().enumerate() {
        tuples += 1;
        let fz = conv(f, &zero);
        if fz != zero {
            let x = c
                .elements()
                .find(|&x| fz.get(x).as_ref() != zero.get(x).as_ref())
                .expect("differing series differ somewhere");
            witness = Some(vec![
                format!("f@{i}"),
                format!("x = {}", c.label(x)),
                "f·𝕆 ≠ 𝕆".into(),
            ]);
            break;
        }
    }
    reports.push(match witness {
        None => LawReport::pass("futuristic-right-annihilation", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("futuristic-right-annihilation", tuples, CheckMode::Exhaustive, w),
    });

    // Empty-family left distributivity: f·(Σ∅) = Σ∅, the same boundary
    // that right annihilation probes.
    let mut witness = None;
    let mut tuples = 0u64;
    for (i, f) in pool.iter().enumerate() {
        tuples += 1;
        let lhs = conv(f, &sum(&[]));
        if lhs != zero {
            let x = c
                .elements()
                .find(|&x| lhs.get(x).as_ref() != zero.get(x).as_ref())
                .expect("differing series differ somewhere");
            witness = Some(vec![format!("f@{i}"), format!("x = {}", c.label(x))]);
            break;
        }
    }
    reports.push(match witness {
        None => LawReport::pass("futuristic-left-distributivity-empty", tuples, CheckMode::Exhaustive),
        Some(w) => LawReport::fail("futuristic-left-distributivity-empty", tuples, CheckMode::Exhaustive, w),
    });

    Ok(reports)
}
