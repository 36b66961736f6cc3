use gsp4_local::besselzeta::{
    tame_norm_final_check, tamenormrel_check, z_section, z_section_expected, zeta_check, BesselDatum, PhiLabel,
    TameData, TameFactors,
};
use gsp4_local::branching::{
    admissible_pairs, branch_decompose_rep, build_rep, dimension_formula, dual_character_check_rep, hw_vector,
    twist_lemma_check, twist_micro_check,
};
use gsp4_local::gl2local::{
    adjointness_sides, intertwine, l_factor, phi_t, support_check, IntertwineMode, SiegelSection,
    UnramChar, X,
};
use gsp4_local::gsp4local::{hecke_poly_check, parahoric_check, CheckOutcome, PrincipalSeriesG};
use gsp4_local::normrel::{
    frobrecip_pairing_check, indept_identity, make_local_data, sufficiency_check, wild_coset_identity, RChoice,
    Role, WildFactor,
};
use gsp4_local::padic::{gl2_w, lower_unipotent, ppow, QMat, SchwartzFn};
use gsp4_local::symcore::{q, ratfunc_eq, RatFunc};
use serde_json::{Map, Value};

use crate::config::{Suite, SuiteConfig};

/// Result of one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { lhs: String, rhs: String },
    Error(String),
}

impl Outcome {
    pub fn check(c: CheckOutcome) -> Outcome {
        if c.ok {
            Outcome::Pass
        } else {
            Outcome::Fail { lhs: c.lhs.to_string(), rhs: c.rhs.to_string() }
        }
    }

    pub fn holds(ok: bool) -> Outcome {
        Outcome::expect(ok, true)
    }

    fn expect<T: PartialEq + ToString>(got: T, want: T) -> Outcome {
        if got == want {
            Outcome::Pass
        } else {
            Outcome::Fail { lhs: got.to_string(), rhs: want.to_string() }
        }
    }

    fn ratfunc(lhs: &RatFunc, rhs: &RatFunc, p: Option<u64>) -> Outcome {
        Outcome::check(CheckOutcome::compare(lhs.clone(), rhs.clone(), p))
    }
}

fn attempt<E: std::fmt::Display>(f: impl FnOnce() -> Result<Outcome, E>) -> Outcome {
    f().unwrap_or_else(|e| Outcome::Error(e.to_string()))
}

type Job = Box<dyn Fn() -> Outcome + Send + Sync>;

pub struct Case {
    pub suite: Suite,
    pub id: String,
    pub params: Map<String, Value>,
    pub job: Job,
}

struct Builder<'a> {
    suite: Suite,
    out: &'a mut Vec<Case>,
}

impl Builder<'_> {
    fn add<const N: usize>(
        &mut self,
        kind: &str,
        params: [(&str, Value); N],
        job: impl Fn() -> Outcome + Send + Sync + 'static,
    ) {
        let tail: Vec<String> = params.iter().map(|(k, v)| format!("{k}={}", v.as_str().map_or(v.to_string(), str::to_string))).collect();
        let id = if tail.is_empty() { kind.to_string() } else { format!("{kind}:{}", tail.join(",")) };
        let params = params.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self.out.push(Case { suite: self.suite, id, params, job: Box::new(job) });
    }
}

fn primes_in(cfg: &SuiteConfig, allowed: &[u64]) -> Vec<u64> {
    cfg.primes.iter().copied().filter(|p| allowed.contains(p)).collect()
}

/// Valid wild levels `(m, n)` with `max(m, 1) <= n` inside the configured bounds.
fn wild_levels(cfg: &SuiteConfig) -> Vec<(u32, u32)> {
    let r = &cfg.ranges;
    (0..=r.m_max).flat_map(|m| (m.max(1)..=r.n_max).map(move |n| (m, n))).collect()
}

fn formal_chars() -> (UnramChar, UnramChar) {
    (UnramChar::formal("alpha"), UnramChar::formal("beta"))
}

fn gl2_phis(p: u64) -> [(&'static str, SchwartzFn); 3] {
    [("phi0", phi_t(p, 0)), ("phi1", phi_t(p, 1)), ("ch01", SchwartzFn::ch_coset(p, [q(0), q(1)], 1))]
}

fn gl2_points(p: u64) -> [(&'static str, QMat); 4] {
    [
        ("1", QMat::identity(2)),
        ("w", gl2_w()),
        ("diag(l,1)", QMat::diag(&[q(p as i64), q(1)])),
        ("n-(1/l)", lower_unipotent(ppow(p, -1))),
    ]
}

fn gl2(cfg: &SuiteConfig, b: &mut Builder) {
    for p in cfg.primes.clone() {
        for t in 0..=cfg.ranges.t_max {
            b.add("value-at-1", [("ell", p.into()), ("t", t.into())], move || {
                attempt(|| {
                    let (chi, psi) = formal_chars();
                    let f = SiegelSection::new(phi_t(p, t as i64), chi.clone(), psi.clone());
                    let got = f.eval(&QMat::identity(2))?;
                    let want = if t == 0 {
                        RatFunc::one()
                    } else {
                        let x2 = RatFunc::var(X).pow(2)?;
                        l_factor(&UnramChar::new(&chi.div(&psi).at_ell() * &x2)?, 2).inv()?
                    };
                    Ok::<_, Box<dyn std::error::Error>>(Outcome::ratfunc(&got, &want, Some(p)))
                })
            });
            b.add("support", [("ell", p.into()), ("t", t.into())], move || {
                attempt(|| {
                    let (chi, psi) = formal_chars();
                    support_check(&SiegelSection::new(phi_t(p, t as i64), chi, psi), t).map(Outcome::holds)
                })
            });
        }
        for (pi, (pname, _)) in gl2_phis(p).into_iter().enumerate() {
            for (gi, (gname, _)) in gl2_points(p).into_iter().enumerate() {
                b.add("closed-vs-direct", [("ell", p.into()), ("phi", pname.into()), ("g", gname.into())], move || {
                    attempt(|| {
                        let (chi, psi) = formal_chars();
                        let f = SiegelSection::new(gl2_phis(p)[pi].1.clone(), chi, psi);
                        let g = &gl2_points(p)[gi].1;
                        let c = intertwine(&f, g, IntertwineMode::ClosedForm)?;
                        let d = intertwine(&f, g, IntertwineMode::Direct { shell_bound: 8 })?;
                        Ok::<_, gsp4_local::gl2local::Gl2Error>(Outcome::ratfunc(&c, &d, Some(p)))
                    })
                });
            }
        }
        for (i, (n1, _)) in gl2_phis(p).into_iter().enumerate() {
            for (j, (n2, _)) in gl2_phis(p).into_iter().enumerate() {
                b.add("adjoint", [("ell", p.into()), ("phi1", n1.into()), ("phi2", n2.into())], move || {
                    attempt(|| {
                        let (chi, psi) = formal_chars();
                        let phis = gl2_phis(p);
                        let f1 = SiegelSection::new(phis[i].1.clone(), chi.clone(), psi.clone());
                        let f2 = SiegelSection::new(phis[j].1.clone(), psi.inv(), chi.inv());
                        let (l, r) = adjointness_sides(&f1, &f2, 2, IntertwineMode::ClosedForm)?;
                        Ok::<_, gsp4_local::gl2local::Gl2Error>(Outcome::ratfunc(&l, &r, Some(p)))
                    })
                });
            }
        }
    }
}

fn hecke(cfg: &SuiteConfig, b: &mut Builder) {
    for p in cfg.primes.clone() {
        b.add("hecke-polynomial", [("ell", p.into())], move || {
            attempt(|| hecke_poly_check(&PrincipalSeriesG::formal(), p, &q(0)).map(Outcome::check))
        });
    }
}

fn parahoric(cfg: &SuiteConfig, b: &mut Builder) {
    for p in cfg.primes.clone() {
        b.add("u-charpoly", [("ell", p.into())], move || {
            attempt(|| parahoric_check(&PrincipalSeriesG::formal(), p).map(Outcome::check))
        });
    }
}

fn k_grid(cfg: &SuiteConfig, min: i32) -> Vec<(i32, i32)> {
    let r = &cfg.ranges;
    (min..=r.k1_max).flat_map(|k1| (min..=r.k2_max).map(move |k2| (k1, k2))).collect()
}

fn bessel(cfg: &SuiteConfig, b: &mut Builder) {
    let order = cfg.series_order;
    for (name, label) in [("phi0", PhiLabel::Spherical), ("U-phi0", PhiLabel::USpherical)] {
        b.add("zeta", [("phi", name.into()), ("order", order.into())], move || {
            attempt(|| {
                let eta = UnramChar::formal("eta");
                zeta_check(label, &BesselDatum::formal(), &eta, order).map(Outcome::check)
            })
        });
    }
    for (k1, k2) in k_grid(cfg, 0) {
        for (name, label) in [("phi0", PhiLabel::Spherical), ("U-phi0", PhiLabel::USpherical)] {
            b.add("z-section", [("phi", name.into()), ("k1", k1.into()), ("k2", k2.into())], move || {
                attempt(|| {
                    let data = TameData::formal(k1, k2);
                    let chars = data.chars();
                    let got = z_section(label, &data.sigma, &chars)?;
                    let want = z_section_expected(label, &data.sigma, &chars)?;
                    Ok::<_, gsp4_local::besselzeta::BesselError>(Outcome::ratfunc(&got, &want, None))
                })
            });
        }
    }
}

fn tame_norm(cfg: &SuiteConfig, b: &mut Builder) {
    for (k1, k2) in k_grid(cfg, 0) {
        for t in 1..=cfg.ranges.t_max {
            let parts: &[usize] = if t == 1 { &[1, 2] } else { &[1] };
            for &part in parts {
                b.add("tamenormrel", [("k1", k1.into()), ("k2", k2.into()), ("t", t.into()), ("part", part.into())], move || {
                    attempt(|| {
                        let (a, second) = tamenormrel_check(&TameData::formal(k1, k2), t)?;
                        Ok::<_, gsp4_local::besselzeta::BesselError>(match (part, second) {
                            (1, _) => Outcome::check(a),
                            (_, Some(c)) => Outcome::check(c),
                            (_, None) => Outcome::Error("second identity not produced".into()),
                        })
                    })
                });
            }
        }
    }
    for (k1, k2) in k_grid(cfg, 1) {
        b.add("tame-final", [("k1", k1.into()), ("k2", k2.into())], move || {
            attempt(|| tame_norm_final_check(&TameData::formal(k1, k2), &TameFactors::standard()).map(Outcome::check))
        });
    }
}

fn wild_norm(cfg: &SuiteConfig, b: &mut Builder) {
    for p in primes_in(cfg, &[2, 3]) {
        for (m, n) in wild_levels(cfg) {
            b.add("wild-coset", [("ell", p.into()), ("m", m.into()), ("n", n.into())], move || {
                attempt(|| {
                    let r = wild_coset_identity(p, m, n)?;
                    let want = if m >= 1 { WildFactor::OverEll } else { WildFactor::UMinusOneOverEllMinusOne };
                    let count = r.witnesses.len() as u64;
                    Ok::<_, gsp4_local::normrel::NormError>(if count != p.pow(3) {
                        Outcome::expect(count, p.pow(3))
                    } else {
                        Outcome::expect(r.factor.to_string(), want.to_string())
                    })
                })
            });
        }
        for t in 1..=cfg.ranges.t_max {
            for big_t in 1..=t {
                b.add("indept", [("ell", p.into()), ("T", big_t.into()), ("t", t.into())], move || {
                    attempt(|| {
                        let r = indept_identity(p, big_t, t)?;
                        Ok::<_, gsp4_local::normrel::NormError>(if r.identity_holds {
                            Outcome::expect(r.j_count, r.index_ratio)
                        } else {
                            Outcome::holds(false)
                        })
                    })
                });
            }
        }
    }
    for p in primes_in(cfg, &[2, 3, 5]) {
        for (m, n) in wild_levels(cfg) {
            b.add("sufficiency", [("ell", p.into()), ("m", m.into()), ("n", n.into())], move || {
                attempt(|| {
                    let s = sufficiency_check(p, m, n)?;
                    Ok::<_, gsp4_local::normrel::NormError>(Outcome::holds(s.monotone && s.t_min <= s.bound))
                })
            });
        }
    }
}

fn branching(cfg: &SuiteConfig, b: &mut Builder) {
    let r = cfg.ranges;
    for (a, bb) in admissible_pairs().into_iter().filter(|&(a, bb)| a <= r.a_max && bb <= r.b_max) {
        b.add("representation", [("a", a.into()), ("b", bb.into())], move || {
            attempt(|| {
                let rep = build_rep(a, bb)?;
                let dim = rep.dim() as i64;
                Ok::<_, gsp4_local::branching::BranchError>(if dim != dimension_formula(a, bb) {
                    Outcome::expect(dim, dimension_formula(a, bb))
                } else if !rep.brackets_consistent() {
                    Outcome::Error("bracket relations fail on the realized module".into())
                } else {
                    branch_decompose_rep(&rep)?;
                    Outcome::holds(dual_character_check_rep(&rep))
                })
            })
        });
        for qq in 0..=a {
            for rr in 0..=bb {
                b.add("hw-vector", [("a", a.into()), ("b", bb.into()), ("q", qq.into()), ("r", rr.into())], move || {
                    attempt(|| hw_vector(a, bb, qq, rr).map(|_| Outcome::Pass))
                });
                for h in [-2i64, -1, 1, 2] {
                    let params = [("a", a.into()), ("b", bb.into()), ("q", qq.into()), ("r", rr.into()), ("h", h.into())];
                    b.add("twist", params, move || attempt(|| twist_lemma_check(a, bb, qq, rr, h).map(Outcome::holds)));
                }
            }
        }
    }
    for h in [-2i64, -1, 1, 2] {
        b.add("twist-micro", [("h", h.into())], move || Outcome::holds(twist_micro_check(h)));
    }
}

fn local_data(cfg: &SuiteConfig, b: &mut Builder) {
    for p in cfg.primes.clone() {
        for (name, role) in [("good", Role::Good), ("tame", Role::Tame)] {
            b.add("entry", [("ell", p.into()), ("role", name.into())], move || {
                attempt(|| make_local_data(role, p).and_then(|e| e.check_invariance()).map(|_| Outcome::Pass))
            });
        }
    }
    for p in primes_in(cfg, &[2, 3]) {
        for (m, n) in wild_levels(cfg) {
            let t = n + 2 * m;
            let role = Role::Wild { m, n, t };
            b.add("entry", [("ell", p.into()), ("role", role.to_string().into())], move || {
                attempt(|| make_local_data(role, p).and_then(|e| e.check_invariance()).map(|_| Outcome::Pass))
            });
        }
    }
}

fn frobrecip(cfg: &SuiteConfig, b: &mut Builder) {
    for (k1, k2) in k_grid(cfg, 0) {
        for p in cfg.primes.clone() {
            for (name, choice) in [("scalar", RChoice::Scalar), ("euler-factor", RChoice::EulerFactor)] {
                b.add("pairing", [("k1", k1.into()), ("k2", k2.into()), ("ell", p.into()), ("r", name.into())], move || {
                    attempt(|| frobrecip_pairing_check(&TameData::formal(k1, k2), p, choice).map(Outcome::check))
                });
            }
            b.add("perturbed-rejected", [("k1", k1.into()), ("k2", k2.into()), ("ell", p.into())], move || {
                attempt(|| {
                    let c = frobrecip_pairing_check(&TameData::formal(k1, k2), p, RChoice::PerturbedEuler)?;
                    Ok::<_, gsp4_local::normrel::NormError>(Outcome::holds(!c.ok && !ratfunc_eq(&c.lhs, &c.rhs)))
                })
            });
        }
    }
}

/// All cases of the selected suites, in report order.
pub fn cases(cfg: &SuiteConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for &suite in &cfg.suites {
        let mut b = Builder { suite, out: &mut out };
        match suite {
            Suite::Gl2 => gl2(cfg, &mut b),
            Suite::Hecke => hecke(cfg, &mut b),
            Suite::Parahoric => parahoric(cfg, &mut b),
            Suite::Bessel => bessel(cfg, &mut b),
            Suite::TameNorm => tame_norm(cfg, &mut b),
            Suite::WildNorm => wild_norm(cfg, &mut b),
            Suite::Branching => branching(cfg, &mut b),
            Suite::LocalData => local_data(cfg, &mut b),
            Suite::Frobrecip => frobrecip(cfg, &mut b),
        }
    }
    out
}
