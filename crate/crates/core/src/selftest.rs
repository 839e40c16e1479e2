//! Embedded invariant suite behind `skew-knh selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counter;
use crate::error::Result;
use crate::field::{Fe, FieldCtx};
use crate::functionals::{FunctionalSet, MinPolyTree, TreeMethod};
use crate::instance::Instance;
use crate::knh_fast::{solve, verify, Algorithm, SolveOptions};
use crate::module::{is_wowpb, vec_mod_r, SkewVec, WeightVec};
use crate::rank_codes::{random_rank_error, DecodeOutcome, GabidulinCode};
use crate::skew::{EvalFamily, SkewPoly, SkewRing};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelftestReport {
    /// `(group, checks run, failures)`.
    pub groups: Vec<(String, usize, usize)>,
}

impl SelftestReport {
    pub fn checks(&self) -> usize {
        self.groups.iter().map(|g| g.1).sum()
    }

    pub fn failures(&self) -> usize {
        self.groups.iter().map(|g| g.2).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, n, f) in &self.groups {
            out.push_str(&format!("{name}: {} / {n} passed\n", n - f));
        }
        out.push_str(&format!(
            "selftest: {} checks, {} failures: {}\n",
            self.checks(),
            self.failures(),
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

struct Group {
    name: &'static str,
    run: usize,
    failed: usize,
}

impl Group {
    fn new(name: &'static str) -> Self {
        Group { name, run: 0, failed: 0 }
    }

    /// Errors count as failures.
    fn check(&mut self, ok: Result<bool>) {
        self.run += 1;
        if !matches!(ok, Ok(true)) {
            self.failed += 1;
        }
    }
}

fn rings() -> Vec<SkewRing> {
    let mut out = Vec::new();
    for (p, m) in [(2u64, 4usize), (3, 3), (5, 2)] {
        let f = FieldCtx::new(p, m, None).expect("small field");
        let g = f.gen();
        out.push(SkewRing::new(f.clone()));
        out.push(SkewRing::new(f.with_derivation(g)).with_karatsuba(Some(2)));
    }
    out
}

fn random_poly<R: Rng>(ring: &SkewRing, deg: usize, rng: &mut R) -> SkewPoly {
    SkewPoly::from_coeffs((0..=deg).map(|_| ring.field().random(rng)).collect())
}

fn ring_axioms(g: &mut Group, rng: &mut ChaCha8Rng) {
    for ring in rings() {
        let fd = ring.field();
        for _ in 0..4 {
            let a = fd.random_nonzero(rng);
            g.check(fd.inv(a).map(|i| fd.mul(a, i) == Fe::ONE));
            let (b, c) = (fd.random(rng), fd.random(rng));
            g.check(Ok(fd.mul(a, fd.add(b, c)) == fd.add(fd.mul(a, b), fd.mul(a, c))));
            let [f, h, k] = [0; 3].map(|_| {
                let d = rng.gen_range(0..40);
                random_poly(&ring, d, rng)
            });
            g.check(Ok(ring.mul(&ring.mul(&f, &h), &k) == ring.mul(&f, &ring.mul(&h, &k))));
            g.check(Ok(ring.mul(&f, &ring.add(&h, &k)) == ring.add(&ring.mul(&f, &h), &ring.mul(&f, &k))));
            g.check(Ok(ring.mul(&f, &h) == ring.mul_schoolbook(&f, &h)));
            if !h.is_zero() {
                g.check(ring.right_divmod(&f, &h).map(|(q, r)| {
                    ring.add(&ring.mul(&q, &h), &r) == f && (r.is_zero() || r.degree() < h.degree())
                }));
            }
        }
    }
}

fn reduction_invariance(g: &mut Group, rng: &mut ChaCha8Rng) {
    for ring in rings() {
        for family in [EvalFamily::Operator, EvalFamily::Remainder] {
            let n = 9;
            let Ok(inst) = Instance::random(ring.clone(), family, 1, n, WeightVec::zeros(2), rng.gen()) else {
                g.check(Ok(false));
                continue;
            };
            let fs: &FunctionalSet = &inst.fs;
            let tree = match MinPolyTree::build(fs, TreeMethod::Subproduct) {
                Ok(t) => t,
                Err(e) => {
                    g.check(Err(e));
                    continue;
                }
            };
            let ranges: Vec<(usize, usize)> = tree.ranges().collect();
            for _ in 0..4 {
                let (i, j) = ranges[rng.gen_range(0..ranges.len())];
                let q = SkewVec((0..2).map(|_| random_poly(&ring, rng.gen_range(0..20), rng)).collect());
                let res = tree.get(i, j).and_then(|m| {
                    let r = vec_mod_r(&ring, &q, m)?;
                    let mut ok = true;
                    for l in i..=j {
                        ok &= fs.eval(l, &q)? == fs.eval(l, &r)?;
                        ok &= fs.eval_x_shift(l, &q)? == fs.eval_x_shift(l, &r)?;
                        ok &= fs.eval_x_shift(l, &q)? == fs.eval_x_shift_direct(l, &q)?;
                    }
                    Ok(ok)
                });
                g.check(res);
            }
        }
    }
}

fn fast_equals_baseline(g: &mut Group, w: &mut Group, rng: &mut ChaCha8Rng) {
    for ring in rings() {
        for family in [EvalFamily::Operator, EvalFamily::Remainder] {
            for _ in 0..3 {
                let s = rng.gen_range(1..4);
                let n = rng.gen_range(1..40);
                let weights = WeightVec((0..=s).map(|_| rng.gen_range(0..=n)).collect());
                let res = Instance::random(ring.clone(), family, s, n, weights, rng.gen()).and_then(|inst| {
                    let opts = SolveOptions { leaf_threshold: 4, ..SolveOptions::default() };
                    let a = solve(&inst.fs, &inst.weights, Algorithm::Baseline, &opts)?;
                    let b = solve(&inst.fs, &inst.weights, Algorithm::Fast, &opts)?;
                    Ok((inst, a, b))
                });
                match res {
                    Ok((inst, a, b)) => {
                        g.check(Ok(a.basis == b.basis && a.degrees == b.degrees));
                        w.check(Ok(is_wowpb(&b.basis, &inst.weights)));
                        w.check(verify(&inst.fs, &inst.weights, &b).map(|_| true));
                    }
                    Err(e) => g.check(Err(e)),
                }
            }
        }
    }
}

fn decoding(g: &mut Group, rng: &mut ChaCha8Rng) {
    let Ok(field) = FieldCtx::new(2, 8, None) else {
        g.check(Ok(false));
        return;
    };
    let Ok(code) = GabidulinCode::standard(SkewRing::new(field.clone()), 8, 4) else {
        g.check(Ok(false));
        return;
    };
    for t in 0..=2 {
        for _ in 0..3 {
            let f = code.random_message(rng);
            let res = random_rank_error(&field, 8, t, rng).and_then(|e| {
                let c = code.encode(&f)?;
                let r: Vec<Fe> = c.iter().zip(&e).map(|(&a, &b)| field.add(a, b)).collect();
                Ok(code.decode(&r, Algorithm::Fast)? == DecodeOutcome::Decoded(f.clone()))
            });
            g.check(res);
        }
    }
}

/// Runs every group on a fixed seed. With `inject_fault` the field
/// multiplication is corrupted first, which must make the suite fail.
pub fn run(inject_fault: bool) -> SelftestReport {
    let body = || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
        let mut axioms = Group::new("ring axioms");
        let mut reduction = Group::new("reduction invariance");
        let mut equal = Group::new("fast = baseline");
        let mut popov = Group::new("weak Popov and kernel");
        let mut decode = Group::new("decoding");
        ring_axioms(&mut axioms, &mut rng);
        reduction_invariance(&mut reduction, &mut rng);
        fast_equals_baseline(&mut equal, &mut popov, &mut rng);
        decoding(&mut decode, &mut rng);
        SelftestReport {
            groups: [axioms, reduction, equal, popov, decode]
                .into_iter()
                .map(|g| (g.name.to_string(), g.run, g.failed))
                .collect(),
        }
    };
    if inject_fault {
        counter::with_fault_injection(body)
    } else {
        body()
    }
}
