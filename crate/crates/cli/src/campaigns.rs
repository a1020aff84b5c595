//! One runner per campaign kind. Every runner is deterministic given the
//! resolved instance and seed.

use ocformal::bd::{check_bd_axioms, free_closed_sector, AxiomReport};
use ocformal::exec::Exec;
use ocformal::formality::{
    certify_bdr, certify_kil, kil_instance, random_bvinf_instance, random_key_lemma_instance,
    random_open_sector, verify_bvinf, verify_commutation, verify_key_lemma, EvalOptions,
    FormalityError, OcMorphism,
};
use ocformal::graphs::{sweep_gt, DefectMode, GtLimits};
use ocformal::linfty::{dgla_to_coderivation, square_zero_check, MorphismWindow};
use ocformal::random::{random_free_bv, FreeBVShape};
use ocformal::report::{all_passed, CheckResult};
use serde::Serialize;
use serde_json::{json, Value};

use crate::instance::{parse_monomial, Campaign, Resolved};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub id: String,
    pub kind: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub details: Value,
}

fn finish(c: &Campaign, checks: Vec<CheckResult>, details: Value) -> CampaignReport {
    CampaignReport {
        id: c.id().to_string(),
        kind: c.kind().to_string(),
        passed: all_passed(&checks),
        checks,
        details,
    }
}

/// Fold per-instance outcomes into one check; the first failure in seed
/// order is the counterexample.
fn aggregate(name: &str, outcomes: &[Option<String>]) -> CheckResult {
    CheckResult::new(
        name,
        outcomes.len(),
        outcomes.iter().flatten().next().cloned(),
    )
}

fn mode_name(m: DefectMode) -> &'static str {
    match m {
        DefectMode::KeepOnFirst => "keep-on-first",
        DefectMode::Redistribute => "redistribute",
    }
}

pub fn run(c: &Campaign, inst: &Resolved, exec: Exec) -> Result<CampaignReport, CliError> {
    match c {
        Campaign::GtBijection {
            g_max,
            n_max,
            m_max,
            k_max,
            half_edge_max,
            modes,
            ..
        } => {
            let limits = GtLimits {
                g_max: *g_max,
                n_max: *n_max,
                m_max: *m_max,
                k_max: *k_max,
                half_edge_max: *half_edge_max,
            };
            let modes: Vec<DefectMode> = match modes {
                Some(ms) => ms.iter().map(|&m| m.into()).collect(),
                None => vec![DefectMode::KeepOnFirst, DefectMode::Redistribute],
            };
            let mut checks = Vec::new();
            let mut table = Vec::new();
            for mode in modes {
                let reports =
                    sweep_gt(limits, mode, exec).map_err(|e| CliError::Input(e.to_string()))?;
                let bad = reports.iter().find(|r| !r.holds()).map(|r| {
                    format!(
                        "g={} n={} k1={} k2={} m={}: |A|={} |B|={} |C|={} {}",
                        r.g,
                        r.n,
                        r.k1,
                        r.k2,
                        r.m,
                        r.a,
                        r.b,
                        r.c,
                        r.counterexample.clone().unwrap_or_default()
                    )
                });
                checks.push(CheckResult::new(mode_name(mode), reports.len(), bad));
                table.extend(reports.into_iter().map(|r| {
                    json!({"mode": mode_name(r.mode), "g": r.g, "n": r.n, "k1": r.k1, "k2": r.k2, "m": r.m,
                           "a": r.a, "b": r.b, "c": r.c, "holds": r.holds()})
                }));
            }
            Ok(finish(c, checks, json!({ "cells": table })))
        }
        Campaign::BdAxioms {
            presentations,
            random,
            ..
        } => {
            let mut checks = Vec::new();
            for name in presentations {
                let p = inst.presentation(name)?;
                let report = check_bd_axioms(&p, inst.window, exec);
                checks.extend(report.axioms.into_iter().map(|mut a| {
                    a.name = format!("{name}/{}", a.name);
                    a
                }));
            }
            if let Some(count) = random {
                let seeds: Vec<u64> = (0..*count as u64)
                    .map(|k| inst.seed.wrapping_add(k))
                    .collect();
                let reports: Vec<Result<AxiomReport, String>> = exec.map(&seeds, |&s| {
                    let data = random_free_bv(s, inst.grading, "r", FreeBVShape::default())
                        .map_err(|e| e.to_string())?;
                    let p = free_closed_sector(&data, inst.window).map_err(|e| e.to_string())?;
                    Ok(check_bd_axioms(&p, inst.window, Exec::Sequential))
                });
                let names = [
                    "d_squared",
                    "bd_relation",
                    "bracket_symmetry",
                    "leibniz",
                    "jacobi",
                ];
                for axiom in names {
                    let outcomes: Vec<Option<String>> = reports
                        .iter()
                        .zip(&seeds)
                        .map(|(r, s)| match r {
                            Err(e) => Some(format!("seed {s}: {e}")),
                            Ok(rep) => rep
                                .get(axiom)
                                .and_then(|a| a.counterexample.clone())
                                .map(|ce| format!("seed {s}: {ce}")),
                        })
                        .collect();
                    checks.push(aggregate(&format!("random/{axiom}"), &outcomes));
                }
            }
            Ok(finish(
                c,
                checks,
                json!({"window": {"max_word": inst.window.max_word, "max_gamma": inst.window.max_gamma}}),
            ))
        }
        Campaign::Linfty {
            presentation,
            kernel,
            max_arity,
            max_letters,
            max_gamma,
            ..
        } => {
            let p = inst.presentation(presentation)?;
            let w = MorphismWindow {
                max_arity: *max_arity,
                max_letters: *max_letters,
                max_gamma: *max_gamma,
                include_unit: false,
            };
            let mut checks: Vec<CheckResult> =
                square_zero_check(&dgla_to_coderivation(&p), w, exec)
                    .into_iter()
                    .map(|mut r| {
                        r.name = format!("square_zero/{}", r.name);
                        r
                    })
                    .collect();
            if let Some(k) = kernel {
                let h = inst.kernel(k)?;
                let cert =
                    certify_kil(&p, &h, w, exec).map_err(|e| CliError::Input(e.to_string()))?;
                checks.extend(cert.results.into_iter().map(|mut r| {
                    r.name = format!("kernel_morphism/{}", r.name);
                    r
                }));
            }
            Ok(finish(c, checks, json!({ "window": w })))
        }
        Campaign::Bvinf { cases, random, .. } => {
            let opts = EvalOptions::default();
            let mut checks = Vec::new();
            let mut identities = Vec::new();
            for (n, case) in cases.iter().enumerate() {
                let h = inst.kernel(&case.kernel)?;
                let xs = case
                    .inputs
                    .iter()
                    .map(|name| {
                        let (space, m) = inst.monomial(name)?;
                        if inst.file.kernels[&case.kernel].space != space {
                            return Err(CliError::Input(format!(
                                "monomial `{name}` is not over the kernel's space"
                            )));
                        }
                        Ok(m)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let rep = verify_bvinf(&h, &xs, case.i, case.j, opts)
                    .map_err(|e| CliError::Input(e.to_string()))?;
                let diff = (!rep.passed()).then(|| rep.difference().display(h.space()).to_string());
                checks.push(CheckResult::new(format!("case_{n}"), 1, diff));
                identities.push(rep.to_repr(h.space()));
            }
            let mut summary = Value::Null;
            if let Some(count) = random {
                let seeds: Vec<u64> = (0..*count as u64)
                    .map(|k| inst.seed.wrapping_add(k))
                    .collect();
                let outcomes: Vec<(Option<String>, bool)> = exec.map(&seeds, |&s| {
                    let i = random_bvinf_instance(s);
                    let rep = verify_bvinf(&i.kernel, &i.inputs, i.i, i.j, opts)
                        .expect("generated indices are valid");
                    let fail = (!rep.passed()).then(|| {
                        format!(
                            "seed {s}: difference {}",
                            rep.difference().display(i.kernel.space())
                        )
                    });
                    (fail, !rep.lhs.is_zero())
                });
                let fails: Vec<Option<String>> = outcomes.iter().map(|o| o.0.clone()).collect();
                checks.push(aggregate("random", &fails));
                summary =
                    json!({"instances": count, "nonzero": outcomes.iter().filter(|o| o.1).count()});
            }
            Ok(finish(
                c,
                checks,
                json!({"cases": identities, "random": summary}),
            ))
        }
        Campaign::KeyLemma { cases, random, .. } => {
            let mut checks = Vec::new();
            let mut identities = Vec::new();
            for (n, case) in cases.iter().enumerate() {
                let h = inst.kernel(&case.kernel)?;
                let w = inst.presentation(&case.open)?;
                let axioms = check_bd_axioms(&w, inst.window, exec);
                let bad = axioms.axioms.iter().find(|a| !a.passed).map(|a| {
                    format!(
                        "{}: {}",
                        a.name,
                        a.counterexample.clone().unwrap_or_default()
                    )
                });
                checks.push(CheckResult::new(
                    format!("case_{n}/open_axioms"),
                    axioms.axioms.len(),
                    bad,
                ));
                let f =
                    OcMorphism::new(h, w.space()).map_err(|e| CliError::Input(e.to_string()))?;
                let xs = case
                    .inputs
                    .iter()
                    .map(|word| parse_monomial(f.union(), word, 0))
                    .collect::<Result<Vec<_>, _>>()?;
                let rep =
                    verify_key_lemma(&f, &w, &xs).map_err(|e| CliError::Input(e.to_string()))?;
                let diff = (!rep.passed()).then(|| rep.difference().display(f.union()).to_string());
                checks.push(CheckResult::new(format!("case_{n}/identity"), 1, diff));
                identities.push(rep.to_repr(f.union()));
            }
            let mut summary = Value::Null;
            if let Some(count) = random {
                let seeds: Vec<u64> = (0..*count as u64)
                    .map(|k| inst.seed.wrapping_add(k))
                    .collect();
                let outcomes: Vec<(Option<String>, bool)> = exec.map(&seeds, |&s| {
                    let run = || -> Result<(Option<String>, bool), FormalityError> {
                        let i = random_key_lemma_instance(s, inst.window)?;
                        if !check_bd_axioms(&i.open, inst.window, Exec::Sequential).all_passed() {
                            return Ok((
                                Some(format!("seed {s}: open algebra fails the axioms")),
                                false,
                            ));
                        }
                        let f = OcMorphism::new(i.kernel.clone(), i.open.space())?;
                        let rep = verify_key_lemma(&f, &i.open, &i.inputs)?;
                        let fail = (!rep.passed()).then(|| {
                            format!(
                                "seed {s}: difference {}",
                                rep.difference().display(f.union())
                            )
                        });
                        Ok((fail, !rep.lhs.is_zero()))
                    };
                    run().unwrap_or_else(|e| (Some(format!("seed {s}: {e}")), false))
                });
                let fails: Vec<Option<String>> = outcomes.iter().map(|o| o.0.clone()).collect();
                checks.push(aggregate("random", &fails));
                summary =
                    json!({"instances": count, "nonzero": outcomes.iter().filter(|o| o.1).count()});
            }
            Ok(finish(
                c,
                checks,
                json!({"cases": identities, "random": summary}),
            ))
        }
        Campaign::Commutation {
            cases,
            random,
            max_letters,
            max_gamma,
            ..
        } => {
            let w = MorphismWindow {
                max_arity: 3,
                max_letters: *max_letters,
                max_gamma: *max_gamma,
                include_unit: false,
            };
            let mut checks = Vec::new();
            let mut notes = Vec::new();
            for (n, case) in cases.iter().enumerate() {
                let closed = inst.presentation(&case.closed)?;
                let h = inst.kernel(&case.kernel)?;
                let open = inst.presentation(&case.open)?;
                let (kil, bdr) = if case.certify {
                    let kil = certify_kil(&closed, &h, w, exec)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    (Some(kil), Some(certify_bdr(&open, inst.window, exec)))
                } else {
                    (None, None)
                };
                match verify_commutation(&closed, &h, &open, kil.as_ref(), bdr.as_ref(), w, exec) {
                    Ok(rep) => {
                        notes.push(json!({"case": n, "first_failure": rep.first_failure()}));
                        checks.extend(rep.arities.into_iter().map(|mut r| {
                            r.name = format!("case_{n}/{}", r.name);
                            r
                        }));
                    }
                    Err(FormalityError::Certificate(msg)) => {
                        notes.push(json!({"case": n, "precondition": msg}));
                        checks.push(CheckResult::new(
                            format!("case_{n}/precondition"),
                            0,
                            Some(msg),
                        ));
                    }
                    Err(e) => return Err(CliError::Input(e.to_string())),
                }
            }
            if let Some(count) = random {
                let seeds: Vec<u64> = (0..*count as u64)
                    .map(|k| inst.seed.wrapping_add(k))
                    .collect();
                let outcomes: Vec<Option<String>> = seeds
                    .iter()
                    .map(|&s| {
                        let run = || -> Result<Option<String>, FormalityError> {
                            let i = kil_instance(s, inst.window)?;
                            let open = random_open_sector(
                                s.wrapping_add(1),
                                inst.grading,
                                4,
                                inst.window,
                            )?;
                            let kil = certify_kil(&i.closed, &i.kernel, w, exec)?;
                            let bdr = certify_bdr(&open, inst.window, exec);
                            let rep = verify_commutation(
                                &i.closed,
                                &i.kernel,
                                &open,
                                Some(&kil),
                                Some(&bdr),
                                w,
                                exec,
                            )?;
                            Ok(rep
                                .first_failure()
                                .map(|k| format!("seed {s}: fails at arity {k}")))
                        };
                        run().unwrap_or_else(|e| Some(format!("seed {s}: {e}")))
                    })
                    .collect();
                checks.push(aggregate("random", &outcomes));
            }
            Ok(finish(c, checks, json!({"window": w, "cases": notes})))
        }
    }
}
