//! Seeded randomized self-checks over the library's core laws.
//!
//! Each check runs a fixed number of cases from an explicit seed and
//! reports pass/fail counts plus the first counterexample, so a report
//! embedding one is reproducible byte for byte. The test suites assert
//! zero failures; the CLI embeds the same outcomes in its verification
//! reports.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::extpoint::ExtPoint;
use crate::plmap::{PLMap, Sign};
use crate::sample::{rand_rational, rng_from_seed};
use crate::towers::signature_less;
use crate::wreath::{vec_compare, DyadicRational, FinSupportVec, WreathGroup};

/// Result of one randomized law check.
#[derive(Debug, Clone, Serialize)]
pub struct PropOutcome {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropOutcome {
    fn new(name: &str, seed: u64) -> Self {
        PropOutcome {
            name: name.to_string(),
            seed,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Random continuous increasing PL map: interpolation through up to
/// `max_nodes` strictly increasing exact nodes, slope 1 outside the hull.
/// Zero nodes gives the identity.
pub fn random_plmap(rng: &mut ChaCha8Rng, max_nodes: usize) -> PLMap {
    let n = rng.gen_range(0..=max_nodes);
    let mut xs: BTreeSet<BigRational> = BTreeSet::new();
    let mut ys: BTreeSet<BigRational> = BTreeSet::new();
    for _ in 0..4 * n + 8 {
        if xs.len() < n {
            xs.insert(rand_rational(rng, 12, 4));
        }
        if ys.len() < n {
            ys.insert(rand_rational(rng, 12, 4));
        }
    }
    let nodes: Vec<(BigRational, BigRational)> =
        xs.into_iter().zip(ys).collect();
    PLMap::interpolate(&nodes).expect("strictly increasing nodes")
}

/// Composition is associative, the identity is neutral, inverses cancel
/// on both sides, and inversion anti-distributes over composition.
pub fn plmap_group_axioms(seed: u64, cases: usize) -> PropOutcome {
    let mut rng = rng_from_seed(seed);
    let mut out = PropOutcome::new("plmap_group_axioms", seed);
    let id = PLMap::identity();
    for _ in 0..cases {
        let f = random_plmap(&mut rng, 4);
        let g = random_plmap(&mut rng, 4);
        let h = random_plmap(&mut rng, 3);
        let ok = f.compose(&g.compose(&h)) == f.compose(&g).compose(&h)
            && f.compose(&id) == f
            && id.compose(&f) == f
            && f.compose(&f.invert()).is_identity()
            && f.invert().compose(&f).is_identity()
            && f.compose(&g).invert() == g.invert().compose(&f.invert())
            && f.power(3) == f.compose(&f).compose(&f)
            && f.power(-2) == f.invert().compose(&f.invert());
        out.record(ok, || format!("f={f} g={g} h={h}"));
    }
    out
}

/// Maps are strictly increasing on sampled points and breakpoints, fix
/// the infinite ends, and adjacent pieces agree at every breakpoint.
pub fn plmap_monotonicity(seed: u64, cases: usize) -> PropOutcome {
    let mut rng = rng_from_seed(seed);
    let mut out = PropOutcome::new("plmap_monotonicity", seed);
    for _ in 0..cases {
        let f = random_plmap(&mut rng, 5);
        let mut points: BTreeSet<BigRational> = f.breakpoints().iter().cloned().collect();
        for _ in 0..6 {
            points.insert(rand_rational(&mut rng, 20, 6));
        }
        let images: Vec<BigRational> = points.iter().map(|x| f.evaluate(x)).collect();
        let increasing = images.windows(2).all(|w| w[0] < w[1]);
        let continuous = f.breakpoints().iter().enumerate().all(|(i, b)| {
            f.pieces()[i].apply(b) == f.pieces()[i + 1].apply(b)
        });
        let ends = f.evaluate_ext(&ExtPoint::NegInf) == ExtPoint::NegInf
            && f.evaluate_ext(&ExtPoint::PosInf) == ExtPoint::PosInf;
        out.record(increasing && continuous && ends, || format!("f={f}"));
    }
    out
}

/// Orbitals are disjoint, ordered, have fixed finite ends and correctly
/// signed interiors, and together with the fixed set account for every
/// sampled point.
pub fn plmap_orbital_partition(seed: u64, cases: usize) -> PropOutcome {
    let mut rng = rng_from_seed(seed);
    let mut out = PropOutcome::new("plmap_orbital_partition", seed);
    for _ in 0..cases {
        let f = random_plmap(&mut rng, 5);
        let orbitals = f.signed_orbitals();
        let fixed = f.fixed_set();

        let mut ok = orbitals
            .windows(2)
            .all(|w| w[0].hi <= w[1].lo);
        for o in &orbitals {
            ok &= o.lo < o.hi;
            for end in [&o.lo, &o.hi] {
                if let ExtPoint::Finite(q) = end {
                    ok &= f.evaluate(q) == *q;
                }
            }
            if let (ExtPoint::Finite(lo), ExtPoint::Finite(hi)) = (&o.lo, &o.hi) {
                let mid = (lo + hi) / BigRational::from_integer(2.into());
                let moved = f.evaluate(&mid);
                ok &= match o.sign {
                    Sign::Pos => moved > mid,
                    Sign::Neg => moved < mid,
                };
            }
        }
        for _ in 0..6 {
            let x = rand_rational(&mut rng, 25, 6);
            let px = ExtPoint::Finite(x.clone());
            let image = f.evaluate(&x);
            let in_orbital = orbitals.iter().any(|o| o.contains(&px));
            let in_fixed = fixed.iter().any(|(lo, hi)| *lo <= px && px <= *hi);
            ok &= if image == x {
                in_fixed && !in_orbital
            } else {
                in_orbital && !in_fixed
            };
        }
        out.record(ok, || format!("f={f}"));
    }
    out
}

/// The germ comparison is a total order: equality exactly for equal maps,
/// antisymmetry, and transitivity on sampled triples (with duplicates
/// injected to exercise the equality branch).
pub fn signature_order_laws(seed: u64, cases: usize) -> PropOutcome {
    let mut rng = rng_from_seed(seed);
    let mut out = PropOutcome::new("signature_order_laws", seed);
    for _ in 0..cases {
        let f = random_plmap(&mut rng, 4);
        let g = if rng.gen_bool(0.15) {
            f.clone()
        } else {
            random_plmap(&mut rng, 4)
        };
        let h = random_plmap(&mut rng, 4);
        let mut ok = signature_less(&f, &f) == Ordering::Equal
            && (signature_less(&f, &g) == Ordering::Equal) == (f == g)
            && signature_less(&f, &g) == signature_less(&g, &f).reverse();
        for (a, b, c) in [(&f, &g, &h), (&g, &h, &f), (&h, &f, &g)] {
            if signature_less(a, b) != Ordering::Greater
                && signature_less(b, c) != Ordering::Greater
            {
                ok &= signature_less(a, c) != Ordering::Greater;
            }
        }
        out.record(ok, || format!("f={f} g={g} h={h}"));
    }
    out
}

fn random_int_vec(rng: &mut ChaCha8Rng, bound: i64) -> FinSupportVec<i64> {
    let mut v = FinSupportVec::new();
    for _ in 0..rng.gen_range(0..=3) {
        v.set(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
    }
    v
}

fn random_dyadic_vec(rng: &mut ChaCha8Rng, bound: i64) -> FinSupportVec<DyadicRational> {
    let mut v = FinSupportVec::new();
    for _ in 0..rng.gen_range(0..=3) {
        v.set(
            rng.gen_range(-bound..=bound),
            DyadicRational::from_parts(rng.gen_range(-bound..=bound), rng.gen_range(0..=3)),
        );
    }
    v
}

/// Slot-wise comparison of finitely supported vectors is a total order
/// compatible with addition and negation, over both scalar types.
pub fn vec_compare_totality(seed: u64, cases: usize) -> PropOutcome {
    let mut rng = rng_from_seed(seed);
    let mut out = PropOutcome::new("vec_compare_totality", seed);
    fn laws<S: crate::wreath::Scalar>(
        x: &FinSupportVec<S>,
        y: &FinSupportVec<S>,
        z: &FinSupportVec<S>,
    ) -> bool {
        let mut ok = (vec_compare(x, y) == Ordering::Equal) == (x == y)
            && vec_compare(x, y) == vec_compare(y, x).reverse()
            && vec_compare(&x.neg(), &y.neg()) == vec_compare(x, y).reverse()
            && vec_compare(&x.add(z), &y.add(z)) == vec_compare(x, y);
        if vec_compare(x, y) != Ordering::Greater && vec_compare(y, z) != Ordering::Greater {
            ok &= vec_compare(x, z) != Ordering::Greater;
        }
        ok
    }
    for _ in 0..cases {
        let (x, y, z) = (
            random_int_vec(&mut rng, 5),
            random_int_vec(&mut rng, 5),
            random_int_vec(&mut rng, 5),
        );
        let int_ok = laws(&x, &y, &z);
        let (x, y, z) = (
            random_dyadic_vec(&mut rng, 5),
            random_dyadic_vec(&mut rng, 5),
            random_dyadic_vec(&mut rng, 5),
        );
        out.record(int_ok && laws(&x, &y, &z), || {
            format!("int x={x:?} y={y:?} z={z:?}")
        });
    }
    out
}

/// Wreath multiplication is associative with two-sided inverses and a
/// neutral identity, anti-distributes under inversion, and acts on
/// dyadic vectors as a homomorphism (on lamp-free elements).
pub fn wreath_group_laws(seed: u64, cases: usize) -> PropOutcome {
    let mut rng = rng_from_seed(seed);
    let mut out = PropOutcome::new("wreath_group_laws", seed);
    let group = WreathGroup::default();
    let ident = crate::wreath::WreathElement::identity();
    for _ in 0..cases {
        let x = group.random_element(&mut rng, 5);
        let y = group.random_element(&mut rng, 5);
        let z = group.random_element(&mut rng, 5);
        let mut ok = group.multiply(&group.multiply(&x, &y), &z)
            == group.multiply(&x, &group.multiply(&y, &z))
            && group.multiply(&x, &group.invert(&x)) == ident
            && group.multiply(&group.invert(&x), &x) == ident
            && group.multiply(&x, &ident) == x
            && group.multiply(&ident, &x) == x
            && group.invert(&group.multiply(&x, &y))
                == group.multiply(&group.invert(&y), &group.invert(&x));
        let (mut p, mut q) = (x.clone(), y.clone());
        p.w = FinSupportVec::new();
        q.w = FinSupportVec::new();
        let e = random_dyadic_vec(&mut rng, 3);
        ok &= group.act(&group.multiply(&p, &q), &e).unwrap()
            == group.act(&p, &group.act(&q, &e).unwrap()).unwrap();
        out.record(ok, || format!("x={x} y={y} z={z}"));
    }
    out
}
