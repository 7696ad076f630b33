//! Command implementations: each returns a single JSON report and the
//! process exit code (0 pass, 1 theorem-verification failure, 2 input or
//! axiom failure).

use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::AlgebraMorphism;
use crate::coaction::{
    check_action_axioms, decomposition_theorem, podles_core, Coaction, FlagState,
};
use crate::instances::{self};
use crate::numkit::{CMatrix, ToleranceConfig};
use crate::peterweyl::{peter_weyl, PeterWeylData};
use crate::qgroup::{haar_state, FiniteQuantumGroup, HopfReport};
use crate::reduction::{minimal_reduction, reduced_action, universal_action};

use super::cache;
use super::schema::{CoactionSpec, GroupModel, QuantumGroupSpec, SpecDocument};
use super::CliError;

/// Options shared by all commands.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub tol: ToleranceConfig,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReduceMode {
    Minimal,
    Reduced,
    Universal,
}

impl ReduceMode {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "minimal" => Ok(Self::Minimal),
            "reduced" => Ok(Self::Reduced),
            "universal" => Ok(Self::Universal),
            other => Err(CliError::Input(format!(
                "unknown mode `{other}` (expected minimal, reduced, or universal)"
            ))),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Self::Minimal => "minimal",
            Self::Reduced => "reduced",
            Self::Universal => "universal",
        }
    }
}

fn complex_json(z: num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

fn vector_json(v: &CMatrix) -> Value {
    Value::Array((0..v.rows()).map(|i| complex_json(v[(i, 0)])).collect())
}

fn options_json(opts: &RunOptions) -> Value {
    json!({
        "seed": opts.seed,
        "tolerances": {"rank_tol": opts.tol.rank_tol, "eq_tol": opts.tol.eq_tol},
    })
}

fn flag_json(f: FlagState) -> Value {
    match f {
        FlagState::Unchecked => json!({"state": "unchecked"}),
        FlagState::Pass { residual } => json!({"state": "pass", "residual": residual}),
        FlagState::Fail { violation } => json!({"state": "fail", "violation": violation}),
    }
}

fn hopf_report_json(r: &HopfReport, tol: &ToleranceConfig) -> Value {
    json!({
        "pass": r.pass(tol),
        "max_violation": r.max_violation(),
        "carrier": {
            "associativity": r.carrier.associativity,
            "unit_law": r.carrier.unit_law,
            "star_involutive": r.carrier.star_involutive,
            "star_antihom": r.carrier.star_antihom,
        },
        "comult_morphism": {
            "unital": r.comult_morphism.unital,
            "multiplicative": r.comult_morphism.multiplicative,
            "star": r.comult_morphism.star,
        },
        "coassociativity": r.coassociativity,
        "counit_left": r.counit_left,
        "counit_right": r.counit_right,
        "counit_multiplicative": r.counit_multiplicative,
        "antipode_left": r.antipode_left,
        "antipode_right": r.antipode_right,
        "kac_defect": r.kac_defect,
    })
}

/// Instantiates a quantum group from its spec (axioms not yet verified for
/// explicit data; the builders verify their own output).
pub fn build_quantum_group(spec: &QuantumGroupSpec) -> Result<Arc<FiniteQuantumGroup>, CliError> {
    let g = match spec {
        QuantumGroupSpec::Builtin(name) => {
            debug_assert_eq!(name, "kac_paljutkin");
            instances::kac_paljutkin().map_err(|e| CliError::Input(e.to_string()))?
        }
        QuantumGroupSpec::FiniteGroup { group, model } => match model {
            GroupModel::FunctionAlgebra => {
                instances::function_algebra(group).map_err(|e| CliError::Input(e.to_string()))?
            }
            GroupModel::GroupAlgebra => {
                instances::group_algebra(group).map_err(|e| CliError::Input(e.to_string()))?
            }
        },
        QuantumGroupSpec::Explicit { algebra, comult, counit, antipode } => {
            FiniteQuantumGroup::new(
                Arc::clone(algebra),
                comult.clone(),
                counit.clone(),
                antipode.clone(),
            )
            .map_err(|e| CliError::Input(e.to_string()))?
        }
    };
    Ok(Arc::new(g))
}

/// Builds the coaction described by a spec, verifying Hopf axioms of the
/// underlying group along the way.
pub fn build_coaction(spec: &CoactionSpec, tol: &ToleranceConfig) -> Result<Coaction, CliError> {
    match spec {
        CoactionSpec::Explicit { group, algebra, delta } => {
            let g = build_quantum_group(group)?;
            require_hopf(&g, tol)?;
            Coaction::new(Arc::clone(algebra), g, delta.clone(), tol)
                .map_err(|e| CliError::Input(e.to_string()))
        }
        CoactionSpec::Translation { group } => {
            let g = build_quantum_group(group)?;
            require_hopf(&g, tol)?;
            instances::translation_action(&g, tol).map_err(|e| CliError::Input(e.to_string()))
        }
        CoactionSpec::GSet { group, action } => {
            instances::gset_action(group, action, tol).map_err(|e| CliError::Input(e.to_string()))
        }
        CoactionSpec::Grading { group, algebra, grading } => {
            instances::grading_coaction(group, algebra, grading, tol)
                .map_err(|e| CliError::Input(e.to_string()))
        }
        CoactionSpec::Inflate { target, algebra, q, s } => {
            let target_coaction = build_coaction(target, tol)?;
            let q = AlgebraMorphism::new(
                Arc::clone(algebra),
                Arc::clone(target_coaction.algebra()),
                q.clone(),
            )
            .map_err(|e| CliError::Input(e.to_string()))?;
            let s = AlgebraMorphism::new(
                Arc::clone(target_coaction.algebra()),
                Arc::clone(algebra),
                s.clone(),
            )
            .map_err(|e| CliError::Input(e.to_string()))?;
            let inflation = crate::reduction::inflate(&target_coaction, &q, &s, tol)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(inflation.coaction)
        }
    }
}

fn require_hopf(g: &FiniteQuantumGroup, tol: &ToleranceConfig) -> Result<(), CliError> {
    let report = g.verify(tol).map_err(|e| CliError::Input(e.to_string()))?;
    if !report.pass(tol) {
        return Err(CliError::Input(format!(
            "quantum group fails Hopf axioms by {:.3e}",
            report.max_violation()
        )));
    }
    Ok(())
}

/// Peter-Weyl data with optional on-disk caching.
fn peter_weyl_cached(
    g: &FiniteQuantumGroup,
    opts: &RunOptions,
) -> Result<(PeterWeylData, Value), CliError> {
    if let Some(dir) = &opts.cache_dir {
        if let Some(data) = cache::load_peterweyl(g, &opts.tol, dir)? {
            let info = json!({"enabled": true, "hit": true});
            return Ok((data, info));
        }
        let data = peter_weyl(g, &opts.tol, opts.seed).map_err(|e| CliError::Input(e.to_string()))?;
        let path = cache::cache_peterweyl(g, &data, &opts.tol, dir)?;
        let info = json!({"enabled": true, "hit": false, "stored": path.display().to_string()});
        return Ok((data, info));
    }
    let data = peter_weyl(g, &opts.tol, opts.seed).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((data, json!({"enabled": false})))
}

/// `fqg verify`: axiom checks only, for any document kind.
pub fn cmd_verify(doc: &SpecDocument, opts: &RunOptions) -> Result<(Value, i32), CliError> {
    let tol = &opts.tol;
    match doc {
        SpecDocument::FiniteGroup { group, model } => {
            // table validity was established during parsing
            let report = json!({
                "kind": "verify",
                "subject": "finite_group",
                "order": group.order(),
                "model": match model { GroupModel::FunctionAlgebra => "function_algebra", GroupModel::GroupAlgebra => "group_algebra" },
                "pass": true,
                "options": options_json(opts),
            });
            Ok((report, 0))
        }
        SpecDocument::StarAlgebra { algebra } => {
            let r = algebra.verify(tol);
            let pass = r.pass(tol);
            let report = json!({
                "kind": "verify",
                "subject": "star_algebra",
                "dim": algebra.dim(),
                "pass": pass,
                "axioms": {
                    "associativity": r.associativity,
                    "unit_law": r.unit_law,
                    "star_involutive": r.star_involutive,
                    "star_antihom": r.star_antihom,
                },
                "options": options_json(opts),
            });
            Ok((report, if pass { 0 } else { 2 }))
        }
        SpecDocument::QuantumGroup { spec } => {
            let g = build_quantum_group(spec)?;
            let r = g.verify(tol).map_err(|e| CliError::Input(e.to_string()))?;
            let pass = r.pass(tol);
            let report = json!({
                "kind": "verify",
                "subject": "quantum_group",
                "dim": g.dim(),
                "pass": pass,
                "kac": r.is_kac(tol),
                "axioms": hopf_report_json(&r, tol),
                "options": options_json(opts),
            });
            Ok((report, if pass { 0 } else { 2 }))
        }
        SpecDocument::Coaction { spec } => {
            let c = build_coaction(spec, tol)?;
            let c = check_action_axioms(&c, tol).map_err(|e| CliError::Input(e.to_string()))?;
            let f = c.flags();
            let pass = f.star_hom.is_pass() && f.unital.is_pass() && f.coassociative.is_pass();
            let report = json!({
                "kind": "verify",
                "subject": "coaction",
                "dim_b": c.algebra().dim(),
                "dim_a": c.group().dim(),
                "pass": pass,
                "flags": {
                    "star_hom": flag_json(f.star_hom),
                    "unital": flag_json(f.unital),
                    "coassociative": flag_json(f.coassociative),
                    "dense": flag_json(f.podles_dense),
                    "counital": flag_json(f.counital),
                    "injective": flag_json(f.injective),
                },
                "options": options_json(opts),
            });
            Ok((report, if pass { 0 } else { 2 }))
        }
    }
}

/// `fqg analyze-group`: Hopf axioms, Haar state, and the corepresentation
/// block profile.
pub fn cmd_analyze_group(doc: &SpecDocument, opts: &RunOptions) -> Result<(Value, i32), CliError> {
    let spec = match doc {
        SpecDocument::QuantumGroup { spec } => spec.clone(),
        SpecDocument::FiniteGroup { group, model } => {
            QuantumGroupSpec::FiniteGroup { group: group.clone(), model: *model }
        }
        _ => {
            return Err(CliError::Input(
                "analyze-group expects a quantum_group or finite_group document".into(),
            ))
        }
    };
    let tol = &opts.tol;
    let g = build_quantum_group(&spec)?;
    let axioms = g.verify(tol).map_err(|e| CliError::Input(e.to_string()))?;
    if !axioms.pass(tol) {
        let report = json!({
            "kind": "quantum_group_analysis",
            "dim": g.dim(),
            "axioms": hopf_report_json(&axioms, tol),
            "kac": axioms.is_kac(tol),
            "haar": Value::Null,
            "blocks": Value::Null,
            "options": options_json(opts),
        });
        return Ok((report, 2));
    }

    let haar = haar_state(&g, tol).map_err(|e| CliError::Input(e.to_string()))?;
    let (pw, cache_info) = peter_weyl_cached(&g, opts)?;
    let blocks: Vec<Value> =
        pw.blocks.iter().map(|b| json!({"alpha": b.alpha, "N": b.n_alpha})).collect();
    let report = json!({
        "kind": "quantum_group_analysis",
        "dim": g.dim(),
        "axioms": hopf_report_json(&axioms, tol),
        "kac": axioms.is_kac(tol),
        "haar": {
            "values": vector_json(&haar.functional().transpose()),
            "positive": haar.positive,
            "faithful": haar.faithful,
            "invariance_residual": haar.invariance_residual,
        },
        "blocks": blocks,
        "trivial_index": pw.trivial_index,
        "unitary": pw.unitary,
        "cache": cache_info,
        "options": options_json(opts),
    });
    Ok((report, 0))
}

/// `fqg analyze-action`: flags, isotypical dimensions, core, kernel, and
/// the core/kernel decomposition verdict.
pub fn cmd_analyze_action(doc: &SpecDocument, opts: &RunOptions) -> Result<(Value, i32), CliError> {
    let spec = match doc {
        SpecDocument::Coaction { spec } => spec,
        _ => return Err(CliError::Input("analyze-action expects a coaction document".into())),
    };
    let tol = &opts.tol;
    let c = build_coaction(spec, tol)?;
    let checked = check_action_axioms(&c, tol).map_err(|e| CliError::Input(e.to_string()))?;
    let f = checked.flags();
    let flags_json = json!({
        "star_hom": flag_json(f.star_hom),
        "unital": flag_json(f.unital),
        "coassociative": flag_json(f.coassociative),
        "dense": flag_json(f.podles_dense),
        "counital": flag_json(f.counital),
        "injective": flag_json(f.injective),
    });
    if !f.coassociative.is_pass() {
        let report = json!({
            "kind": "coaction_analysis",
            "dim_b": c.algebra().dim(),
            "dim_a": c.group().dim(),
            "flags": flags_json,
            "W_dims": Value::Null,
            "core_dim": Value::Null,
            "kernel_dim": Value::Null,
            "decomposition": Value::Null,
            "options": options_json(opts),
        });
        return Ok((report, 2));
    }

    let (pw, cache_info) = peter_weyl_cached(c.group(), opts)?;
    let dec = podles_core(&c, &pw, tol).map_err(|e| CliError::Input(e.to_string()))?;
    let theorem = decomposition_theorem(&c, &dec, &pw, tol)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let w_dims: Vec<Value> = dec
        .components
        .iter()
        .map(|(alpha, w)| json!({"alpha": alpha, "N": pw.blocks[*alpha].n_alpha, "dim": w.dim()}))
        .collect();
    let report = json!({
        "kind": "coaction_analysis",
        "dim_b": c.algebra().dim(),
        "dim_a": c.group().dim(),
        "flags": flags_json,
        "W_dims": w_dims,
        "core_dim": dec.core.dim(),
        "kernel_dim": dec.kernel.dim(),
        "decomposition": {
            "holds": theorem.holds,
            "core_plus_kernel": theorem.core_dim + theorem.kernel_dim,
            "dim_b": theorem.dim_b,
            "intersection_dim": theorem.intersection_dim,
            "range_in_core_tensor_residual": theorem.range_in_core_tensor_residual,
            "witness_residual": theorem.witness_residual,
        },
        "cache": cache_info,
        "options": options_json(opts),
    });
    Ok((report, if theorem.holds { 0 } else { 1 }))
}

/// `fqg reduce`: minimal / reduced / universal reduction of a coaction.
pub fn cmd_reduce(
    doc: &SpecDocument,
    mode: ReduceMode,
    opts: &RunOptions,
) -> Result<(Value, i32), CliError> {
    let spec = match doc {
        SpecDocument::Coaction { spec } => spec,
        _ => return Err(CliError::Input("reduce expects a coaction document".into())),
    };
    let tol = &opts.tol;
    let c = build_coaction(spec, tol)?;
    let (pw, cache_info) = peter_weyl_cached(c.group(), opts)?;
    let dec = podles_core(&c, &pw, tol).map_err(|e| CliError::Input(e.to_string()))?;

    let (body, ok) = match mode {
        ReduceMode::Minimal => {
            let mr = minimal_reduction(&c, &pw, tol).map_err(|e| CliError::Input(e.to_string()))?;
            let r = &mr.report;
            let ok = r.factor_injective
                && r.induced_coassociative
                && r.induced_kernel_dim == 0
                && r.p_injective_on_core
                && r.core_transported
                && r.isotypical_dims_match
                && r.factorization_residual <= tol.eq_tol
                && r.equivariance_residual <= tol.eq_tol;
            (
                json!({
                    "rb_dim": mr.quotient.quotient.dim(),
                    "kernel_dim": mr.kernel.dim(),
                    "injective": r.induced_kernel_dim == 0,
                    "checks": {
                        "factorization_residual": r.factorization_residual,
                        "equivariance_residual": r.equivariance_residual,
                        "factor_injective": r.factor_injective,
                        "induced_coassociative": r.induced_coassociative,
                        "induced_dense": r.induced_dense,
                        "p_injective_on_core": r.p_injective_on_core,
                        "core_transported": r.core_transported,
                        "isotypical_dims_match": r.isotypical_dims_match,
                    },
                }),
                ok,
            )
        }
        ReduceMode::Reduced => {
            let h = haar_state(c.group(), tol).map_err(|e| CliError::Input(e.to_string()))?;
            let ra = reduced_action(&c, &h, &pw, tol).map_err(|e| CliError::Input(e.to_string()))?;
            let r = &ra.report;
            let ok = r.form_psd
                && r.induced_kernel_dim == 0
                && r.pi_injective_on_core
                && r.core_transported
                && r.gamma_surjective
                && r.gamma_iso
                && r.equivariance_residual <= tol.eq_tol
                && r.gamma_compat_residual <= tol.eq_tol
                && r.gamma_equivariance_residual <= tol.eq_tol;
            (
                json!({
                    "br_dim": ra.quotient.quotient.dim(),
                    "null_space_dim": ra.null_ideal.dim(),
                    "injective": r.induced_kernel_dim == 0,
                    "gamma_iso": r.gamma_iso,
                    "checks": {
                        "form_psd": r.form_psd,
                        "equivariance_residual": r.equivariance_residual,
                        "pi_injective_on_core": r.pi_injective_on_core,
                        "core_transported": r.core_transported,
                        "gamma_compat_residual": r.gamma_compat_residual,
                        "gamma_surjective": r.gamma_surjective,
                        "gamma_equivariance_residual": r.gamma_equivariance_residual,
                    },
                }),
                ok,
            )
        }
        ReduceMode::Universal => {
            let ua = universal_action(&c, &dec, &pw, tol).map_err(|e| CliError::Input(e.to_string()))?;
            let r = &ua.report;
            let ok = r.core_is_everything
                && r.induced_dense
                && r.induced_kernel_dim == 0
                && r.equivariance_residual <= tol.eq_tol;
            (
                json!({
                    "bu_dim": ua.core_algebra.dim(),
                    "checks": {
                        "equivariance_residual": r.equivariance_residual,
                        "core_is_everything": r.core_is_everything,
                        "induced_dense": r.induced_dense,
                        "induced_kernel_dim": r.induced_kernel_dim,
                    },
                }),
                ok,
            )
        }
    };

    let report = json!({
        "kind": "reduction",
        "mode": mode.name(),
        "source": {
            "dim_b": c.algebra().dim(),
            "dim_a": c.group().dim(),
            "core_dim": dec.core.dim(),
            "kernel_dim": dec.kernel.dim(),
        },
        "result": body,
        "pass": ok,
        "cache": cache_info,
        "options": options_json(opts),
    });
    Ok((report, if ok { 0 } else { 1 }))
}
