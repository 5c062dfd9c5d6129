//! Acceptance sweep: nine top-level criteria, one pass/fail line each.
//! Runs without the libtest harness so every line is always printed; the
//! process exits nonzero if any criterion fails.

use e8alg::freudenthal as fr;
use e8alg::sc::{wedge_sc_file, ScFile};
use e8alg::scalar::{Field, Qi};
use e8alg::verify::{commutation_checks, run_suite, SuiteSpec, VerificationReport};
use e8alg::wedge;

struct Tally {
    failed: u32,
}

impl Tally {
    fn report(&mut self, name: &str, ok: bool, detail: &str) {
        if ok {
            println!("PASS {name}");
        } else {
            println!("FAIL {name}: {detail}");
            self.failed += 1;
        }
    }
}

fn suite(overrides: impl FnOnce(&mut SuiteSpec)) -> Result<VerificationReport, String> {
    let mut spec = SuiteSpec::default();
    overrides(&mut spec);
    run_suite(&spec).map_err(|e| e.to_string())
}

/// Runs a suite and folds it into an accumulated (ok, detail) pair.
fn check(acc: &mut (bool, String), label: &str, r: Result<VerificationReport, String>) {
    match r {
        Ok(rep) if rep.passed() => {}
        Ok(rep) => {
            acc.0 = false;
            acc.1
                .push_str(&format!("[{label}: {} failures] ", rep.failure_count));
        }
        Err(e) => {
            acc.0 = false;
            acc.1.push_str(&format!("[{label}: {e}] "));
        }
    }
}

fn extra(rep: &VerificationReport, key: &str) -> String {
    rep.extras
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.clone())
        .unwrap_or_default()
}

fn main() {
    let mut t = Tally { failed: 0 };

    // 1. Dimension bookkeeping: 80 + 84 + 84 = 248 in the wedge model;
    //    operator-span ranks 52 / 78 / 133 / 248 in the Freudenthal model.
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut counts = [0usize; 3];
        for i in 0..wedge::DIM {
            let b: wedge::El<Qi> = wedge::basis_element(i);
            let kind = if !b.d.is_zero() {
                0
            } else if !b.u.is_zero() {
                1
            } else {
                2
            };
            counts[kind] += 1;
        }
        if counts != [80, 84, 84] {
            ok = false;
            detail = format!("wedge blocks {counts:?}");
        }
        match e8alg::verify::f_model() {
            Ok(m) => {
                if m.e7.e6.f4_rank != 52
                    || m.e7.e6.ops.len() != 78
                    || m.e7.ops.len() != 133
                    || fr::FDIM != 248
                {
                    ok = false;
                    detail.push_str(&format!(
                        " span ranks {}/{}/{}/{}",
                        m.e7.e6.f4_rank,
                        m.e7.e6.ops.len(),
                        m.e7.ops.len(),
                        fr::FDIM
                    ));
                }
                // Coordinates of each basis element must be the unit vector.
                for i in [0usize, 77, 132, 133, 188, 189, 244, 245, 246, 247] {
                    let c = m.coords(&m.basis_element(i)).expect("coords");
                    let unit = c.iter().enumerate().all(|(k, x)| {
                        if k == i {
                            *x == Qi::one()
                        } else {
                            x.is_zero()
                        }
                    });
                    if !unit {
                        ok = false;
                        detail.push_str(&format!(" basis {i} coords not unit"));
                    }
                }
            }
            Err(e) => {
                ok = false;
                detail.push_str(&format!(" model gate: {e}"));
            }
        }
        t.report("criterion-1 dimension bookkeeping", ok, &detail);
    }

    // 2. Bracket laws: exact exhaustive antisymmetry; float-exhaustive
    //    Jacobi below 1e-9; exact Jacobi on 10^4 seeded triples.
    {
        let mut acc = (true, String::new());
        check(
            &mut acc,
            "antisymmetry",
            suite(|s| {
                s.suite = "antisymmetry".into();
                s.mode = "exhaustive".into();
            }),
        );
        let jac_f = suite(|s| {
            s.suite = "jacobi".into();
            s.mode = "exhaustive".into();
            s.backend = "f64".into();
        });
        if let Ok(rep) = &jac_f {
            if rep.max_residual.unwrap_or(f64::INFINITY) >= 1e-9 {
                acc.0 = false;
                acc.1.push_str("[jacobi float residual >= 1e-9] ");
            }
        }
        check(&mut acc, "jacobi-float", jac_f);
        check(
            &mut acc,
            "jacobi-exact",
            suite(|s| {
                s.suite = "jacobi".into();
                s.samples = 10_000;
            }),
        );
        t.report("criterion-2 antisymmetry and jacobi", acc.0, &acc.1);
    }

    // 3. Killing form equals the ad trace form on stratified basis pairs
    //    covering all nine block combinations (>= 50 pairs).
    {
        let mut acc = (true, String::new());
        check(
            &mut acc,
            "killing-vs-adtrace",
            suite(|s| {
                s.suite = "killing-vs-adtrace".into();
                s.samples = 54;
            }),
        );
        t.report("criterion-3 killing equals ad-trace", acc.0, &acc.1);
    }

    // 4. Nondegeneracy and trivial center, both exact.
    {
        let mut acc = (true, String::new());
        let kr = suite(|s| s.suite = "killing-rank".into());
        if let Ok(rep) = &kr {
            if extra(rep, "rank") != "248" {
                acc.0 = false;
                acc.1.push_str("[killing rank != 248] ");
            }
        }
        check(&mut acc, "killing-rank", kr);
        let ce = suite(|s| s.suite = "center".into());
        if let Ok(rep) = &ce {
            if extra(rep, "center-dimension") != "0" {
                acc.0 = false;
                acc.1.push_str("[center != 0] ");
            }
        }
        check(&mut acc, "center", ce);
        t.report("criterion-4 nondegenerate form, trivial center", acc.0, &acc.1);
    }

    // 5. Exterior-algebra identity suites; the adjoint/transpose/trace
    //    identities exhaustive, the rest on >= 10^3 seeded samples.
    {
        let mut acc = (true, String::new());
        for name in ["lemma41", "lemma43", "lemma45", "star-involution"] {
            check(
                &mut acc,
                name,
                suite(|s| {
                    s.suite = name.into();
                    s.samples = 1000;
                }),
            );
        }
        t.report("criterion-5 exterior identity suites", acc.0, &acc.1);
    }

    // 6. w4: exhaustive exact automorphism sweep; order four; compact-form
    //    fixed dimension 64 with shape checks; kernel elements act as the
    //    identity over the cyclotomic backend.
    {
        let mut acc = (true, String::new());
        check(
            &mut acc,
            "automorphism",
            suite(|s| {
                s.suite = "automorphism:w4".into();
                s.mode = "exhaustive".into();
            }),
        );
        let ord = suite(|s| {
            s.suite = "order".into();
            s.auto = Some("w4".into());
        });
        if let Ok(rep) = &ord {
            if extra(rep, "order") != "4" {
                acc.0 = false;
                acc.1.push_str("[order != 4] ");
            }
        }
        check(&mut acc, "order", ord);
        let fd = suite(|s| {
            s.suite = "fixed-dim".into();
            s.auto = Some("w4".into());
        });
        if let Ok(rep) = &fd {
            if extra(rep, "dimension") != "64" {
                acc.0 = false;
                acc.1.push_str("[dimension != 64] ");
            }
        }
        check(&mut acc, "fixed-dim", fd);
        check(
            &mut acc,
            "kernel-elements",
            suite(|s| {
                s.suite = "kernel-elements".into();
                s.backend = "zeta24".into();
            }),
        );
        t.report("criterion-6 w4", acc.0, &acc.1);
    }

    // 7. upsilon4: order four with square upsilon; exact automorphism
    //    sweep; fixed real dimension 134; kernel identities.
    {
        let mut acc = (true, String::new());
        let ord = suite(|s| {
            s.suite = "order".into();
            s.model = "freudenthal".into();
            s.auto = Some("upsilon4".into());
        });
        check(&mut acc, "order", ord);
        check(
            &mut acc,
            "automorphism",
            suite(|s| {
                s.suite = "automorphism:upsilon4".into();
                s.model = "freudenthal".into();
                s.samples = 2000;
            }),
        );
        let fd = suite(|s| {
            s.suite = "fixed-dim".into();
            s.model = "freudenthal".into();
            s.auto = Some("upsilon4".into());
        });
        if let Ok(rep) = &fd {
            if extra(rep, "dimension") != "134" {
                acc.0 = false;
                acc.1.push_str("[dimension != 134] ");
            }
        }
        check(&mut acc, "fixed-dim", fd);
        check(
            &mut acc,
            "kernel-elements",
            suite(|s| {
                s.suite = "kernel-elements".into();
                s.model = "freudenthal".into();
            }),
        );
        t.report("criterion-7 upsilon4", acc.0, &acc.1);
    }

    // 8. mu4: lambda/gamma relations; order four with square upsilon;
    //    exact automorphism sweep; fixed dimensions 63 / 136 / 66; map-level
    //    commutation checks.
    {
        let mut acc = (true, String::new());
        match e8alg::verify::f_model() {
            Ok(m) => {
                let n = fr::PDIM;
                let ident = e8alg::scalar::Mat::<Qi>::identity(n);
                if m.lambda.matmul(&m.lambda) != ident.scale(&Qi::from_int(-1)) {
                    acc.0 = false;
                    acc.1.push_str("[lambda^2 != -1] ");
                }
                if m.gamma.matmul(&m.gamma) != ident {
                    acc.0 = false;
                    acc.1.push_str("[gamma^2 != 1] ");
                }
                if m.lambda.matmul(&m.gamma) != m.gamma.matmul(&m.lambda) {
                    acc.0 = false;
                    acc.1.push_str("[lambda gamma != gamma lambda] ");
                }
                let lg_dim = m.e7_lg_fixed().len();
                if lg_dim != 63 {
                    acc.0 = false;
                    acc.1.push_str(&format!("[(e7)^(lambda gamma) dim {lg_dim} != 63] "));
                }
            }
            Err(e) => {
                acc.0 = false;
                acc.1.push_str(&format!("[model gate: {e}] "));
            }
        }
        let ord = suite(|s| {
            s.suite = "order".into();
            s.model = "freudenthal".into();
            s.auto = Some("mu4".into());
        });
        check(&mut acc, "order", ord);
        check(
            &mut acc,
            "automorphism",
            suite(|s| {
                s.suite = "automorphism:mu4".into();
                s.model = "freudenthal".into();
                s.samples = 2000;
            }),
        );
        for (auto, want) in [("upsilon", "136"), ("mu4", "66")] {
            let fd = suite(|s| {
                s.suite = "fixed-dim".into();
                s.model = "freudenthal".into();
                s.auto = Some(auto.into());
            });
            if let Ok(rep) = &fd {
                if extra(rep, "dimension") != want {
                    acc.0 = false;
                    acc.1.push_str(&format!("[{auto} dimension != {want}] "));
                }
            }
            check(&mut acc, "fixed-dim", fd);
        }
        match commutation_checks(0) {
            Ok(rep) if rep.passed() => {}
            Ok(rep) => {
                acc.0 = false;
                acc.1
                    .push_str(&format!("[commutation: {} failures] ", rep.failure_count));
            }
            Err(e) => {
                acc.0 = false;
                acc.1.push_str(&format!("[commutation: {e}] "));
            }
        }
        t.report("criterion-8 mu4", acc.0, &acc.1);
    }

    // 9. Determinism: byte-identical reports for equal specs; exact
    //    structure-constant round trip that reproduces the bracket.
    {
        let mut ok = true;
        let mut detail = String::new();
        let spec = SuiteSpec {
            suite: "killing-vs-adtrace".into(),
            samples: 54,
            seed: 11,
            ..SuiteSpec::default()
        };
        let a = run_suite(&spec).map(|r| r.canonical_text());
        let b = run_suite(&spec).map(|r| r.canonical_text());
        match (a, b) {
            (Ok(x), Ok(y)) if x == y => {}
            _ => {
                ok = false;
                detail.push_str("[reports differ] ");
            }
        }
        let f = wedge_sc_file::<Qi>();
        match ScFile::<Qi>::parse(&f.to_text()) {
            Ok(g) if g == f => {
                // The reloaded table must reproduce direct bracket evaluation.
                for (i, j) in [(72usize, 80usize), (0, 1), (100, 200), (80, 164)] {
                    let br = wedge::bracket(
                        &wedge::basis_element::<Qi>(i),
                        &wedge::basis_element::<Qi>(j),
                    );
                    let c = wedge::coords(&br);
                    let from_file: Vec<(u32, Qi)> = g
                        .entries
                        .iter()
                        .filter(|(a, b, _, _)| *a == i as u32 && *b == j as u32)
                        .map(|(_, _, k, x)| (*k, x.clone()))
                        .collect();
                    let direct: Vec<(u32, Qi)> = c
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (k as u32, x.clone()))
                        .collect();
                    if from_file != direct {
                        ok = false;
                        detail.push_str(&format!("[reload mismatch at ({i},{j})] "));
                    }
                }
            }
            _ => {
                ok = false;
                detail.push_str("[sc round trip failed] ");
            }
        }
        t.report("criterion-9 determinism and round trip", ok, &detail);
    }

    if t.failed > 0 {
        println!("acceptance: {} criterion(s) failed", t.failed);
        std::process::exit(1);
    }
    println!("acceptance: all 9 criteria passed");
}
