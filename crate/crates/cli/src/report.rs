//! Report sections. Every section is a pure function of the job, so the same
//! job always produces the same JSON.

use std::cell::OnceCell;
use std::sync::Arc;

use fingeom::calculus::Tensor2;
use fingeom::connection::{
    constant_regular_scan, cotorsion_residual, levi_civita, regularity_residual,
    torsion_free_family, torsion_residual, Connection,
};
use fingeom::curvature::{covariant_derivative, curvature_forms, ricci, ricci_flat_solve, Lift};
use fingeom::dirac::as_scalar;
use fingeom::dirac::{
    casimir, chirality, connection_term, dirac_operator, eigenmode_catalog, gamma_matrices,
    minimal_polynomial, minimal_polynomial_check, peter_weyl_rank, rational_spectrum,
    spectral_action, translation_sum, wave_operator, KernelInvolution, ModeStatus, Spectrum,
    SpinorOperator,
};
use fingeom::group::{builtin_rep, BuiltinRep};
use fingeom::metric::Metric;
use fingeom::{
    conjugacy_class, Calculus, Cyclotomic, Error, ExactMatrix, FiniteGroup, Polynomial,
    Representation,
};
use serde_json::{json, Map, Value};

use crate::encode::{exact, function, functions, key, matrix, rational, vector};
use crate::error::CliError;
use crate::job::{Command, GroupSource, JobSpec};

/// Bumped whenever the report layout changes.
pub const FORMAT_VERSION: u32 = 1;

/// Shared state for one job; expensive pieces are computed once.
pub struct Context {
    job: JobSpec,
    group: Arc<FiniteGroup>,
    calculus: Calculus,
    metric: Metric,
    levi_civita: OnceCell<Connection>,
    spinor: OnceCell<Representation>,
    dirac: OnceCell<SpinorOperator>,
    dirac_spectrum: OnceCell<Result<Spectrum, Error>>,
}

impl Context {
    pub fn new(job: JobSpec, group: Arc<FiniteGroup>) -> Result<Self, CliError> {
        let rep = group.index_of(&job.class)?;
        let class = conjugacy_class(&group, rep);
        if class.len() < 2 {
            return Err(CliError::Validation(format!(
                "class {} has fewer than two members",
                class.label()
            )));
        }
        class.require_cyclic()?;
        let metric = Metric::for_class(&class, job.mu.clone())?;
        let calculus = Calculus::new(class)?;
        Ok(Context {
            job,
            group,
            calculus,
            metric,
            levi_civita: OnceCell::new(),
            spinor: OnceCell::new(),
            dirac: OnceCell::new(),
            dirac_spectrum: OnceCell::new(),
        })
    }

    pub fn calculus(&self) -> &Calculus {
        &self.calculus
    }

    fn member_names(&self) -> Vec<String> {
        self.calculus.class().member_names()
    }

    fn levi_civita(&self) -> Result<&Connection, CliError> {
        if let Some(c) = self.levi_civita.get() {
            return Ok(c);
        }
        let conn = levi_civita(&self.calculus, &self.metric)?;
        Ok(self.levi_civita.get_or_init(|| conn))
    }

    fn spinor(&self) -> Result<&Representation, CliError> {
        if let Some(r) = self.spinor.get() {
            return Ok(r);
        }
        let rep = builtin_rep(&self.group, BuiltinRep::Spinor)?;
        Ok(self.spinor.get_or_init(|| rep))
    }

    fn dirac(&self) -> Result<&SpinorOperator, CliError> {
        if let Some(d) = self.dirac.get() {
            return Ok(d);
        }
        let d = dirac_operator(
            &self.calculus,
            self.spinor()?,
            self.levi_civita()?,
            &self.metric,
        )?;
        Ok(self.dirac.get_or_init(|| d))
    }

    /// The Dirac spectrum, or the reason it has no complete rational form.
    fn dirac_spectrum(&self) -> Result<&Result<Spectrum, Error>, CliError> {
        let d = self.dirac()?;
        Ok(self
            .dirac_spectrum
            .get_or_init(|| rational_spectrum(d.matrix())))
    }

    pub fn header(&self) -> Value {
        let source = match &self.job.group {
            GroupSource::Dihedral(n) => format!("dihedral:{n}"),
            GroupSource::Cayley(_) => "cayley".to_string(),
        };
        json!({
            "format_version": FORMAT_VERSION,
            "command": self.job.command.name(),
            "group": {
                "source": source,
                "order": self.group.order(),
                "elements": self.group.names(),
            },
            "class": {
                "representative": self.job.class,
                "members": self.member_names(),
            },
            "mu": rational(&self.job.mu),
        })
    }

    pub fn section(&self, command: Command) -> Result<Value, CliError> {
        match command {
            Command::Calculus => Ok(self.calculus_section()),
            Command::Connection => self.connection_section(),
            Command::Curvature => self.curvature_section(),
            Command::Ricci => self.ricci_section(),
            Command::Dirac => self.dirac_section(),
            Command::Wave => self.wave_section(),
            Command::SpectralAction => self.spectral_action_section(),
            Command::ReportAll => {
                let mut all = Map::new();
                for c in Command::ALL
                    .into_iter()
                    .filter(|&c| c != Command::ReportAll)
                {
                    all.insert(c.name().to_string(), self.section(c)?);
                }
                Ok(Value::Object(all))
            }
        }
    }

    fn calculus_section(&self) -> Value {
        let calc = &self.calculus;
        let class = calc.class();
        let names = self.member_names();
        let space = calc.space();
        let group = calc.group();
        let pair = |&(i, j): &(usize, usize)| json!([names[i], names[j]]);
        let cycles: Vec<Value> = space
            .psi_cycles()
            .iter()
            .map(|cycle| {
                Value::Array(
                    cycle
                        .iter()
                        .map(|&m| pair(&(m / names.len(), m % names.len())))
                        .collect(),
                )
            })
            .collect();
        let products: Vec<Vec<&str>> = class
            .product_table()
            .iter()
            .map(|row| row.iter().map(|&g| group.name(g)).collect())
            .collect();
        let theta = calc.theta();
        let d_e: Map<String, Value> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), functions(calc.d_e(i).coeffs())))
            .collect();
        json!({
            "class_size": class.len(),
            "product_table": products,
            "table2_type": class.is_table2_type(),
            "braiding_cycles": cycles,
            "relation_dimension": space.relation_dimension(),
            "two_form_dimension": space.dimension(),
            "quotient_basis": space.quotient_basis().iter().map(pair).collect::<Vec<_>>(),
            "d_e": d_e,
            "theta_wedge_theta_zero": calc.wedge(&theta, &theta).is_zero(),
        })
    }

    fn connection_section(&self) -> Result<Value, CliError> {
        let calc = &self.calculus;
        let family = torsion_free_family(calc)?;
        let lc = self.levi_civita()?;
        let names = self.member_names();
        let components: Map<String, Value> = names
            .iter()
            .enumerate()
            .map(|(a, n)| (n.clone(), functions(lc.component(a).coeffs())))
            .collect();
        let regularity = regularity_residual(calc, lc);
        let scan = if calc.class().is_table2_type() {
            match constant_regular_scan(calc) {
                Ok(points) => json!(points.iter().map(|p| vector(p)).collect::<Vec<_>>()),
                Err(e) => json!({ "error": e.to_string() }),
            }
        } else {
            Value::Null
        };
        Ok(json!({
            "torsion_free_family": {
                "unknowns": family.unknowns,
                "rank": family.rank,
                "rank_without_last_member": family.rank_without_last,
                "dimension": family.dimension(),
            },
            "levi_civita": {
                "components": components,
                "sum_zero": lc.sum().is_zero(),
                "torsion_zero": torsion_residual(calc, lc).iter().all(|t| t.is_zero()),
                "cotorsion_zero": cotorsion_residual(calc, lc)?.iter().all(|t| t.is_zero()),
                "regular": regularity.is_regular(),
            },
            "constant_regular_scan": scan,
        }))
    }

    fn curvature_section(&self) -> Result<Value, CliError> {
        let calc = &self.calculus;
        let lc = self.levi_civita()?;
        let forms = curvature_forms(calc, lc);
        let names = self.member_names();
        let curvature: Map<String, Value> = names
            .iter()
            .enumerate()
            .map(|(a, n)| (n.clone(), functions(forms.forms[a].coeffs())))
            .collect();
        let equals_d_e = (0..names.len()).all(|a| &forms.forms[a] == calc.d_e(a));
        let nabla: Map<String, Value> = names
            .iter()
            .enumerate()
            .map(|(a, n)| {
                (
                    n.clone(),
                    tensor(calc, &covariant_derivative(calc, lc, &calc.e(a))),
                )
            })
            .collect();
        Ok(json!({
            "levi_civita_curvature": curvature,
            "curvature_equals_d_e": equals_d_e,
            "quadratic_terms_vanish": forms.quadratic_vanishes(),
            "covariant_derivative_of_frame": nabla,
        }))
    }

    fn ricci_section(&self) -> Result<Value, CliError> {
        let calc = &self.calculus;
        let lc = self.levi_civita()?;
        let mut lifts = Map::new();
        for lift in Lift::ALL {
            let r = ricci(calc, lc, lift);
            let flat = if calc.class().is_table2_type() {
                let report = ricci_flat_solve(calc, lift)?;
                let solution = report.solution.as_ref().map(|(p, dim)| {
                    json!({
                        "alpha": function(&p.alpha),
                        "beta": function(&p.beta),
                        "gamma": function(&p.gamma),
                        "family_dimension": dim,
                    })
                });
                json!({
                    "unknowns": report.unknowns,
                    "rank": report.rank,
                    "augmented_rank": report.augmented_rank,
                    "diagonal_rank": report.diagonal_rank,
                    "unconstrained_nullity": report.unconstrained_nullity,
                    "unconstrained_feasible": report.unconstrained_feasible,
                    "feasible": report.is_feasible(),
                    "solution": solution,
                })
            } else {
                Value::Null
            };
            lifts.insert(
                lift.name().to_string(),
                json!({
                    "levi_civita_ricci": tensor(calc, &r),
                    "levi_civita_ricci_zero": r.is_zero(),
                    "ricci_flat_chart": flat,
                }),
            );
        }
        Ok(Value::Object(lifts))
    }

    fn dirac_section(&self) -> Result<Value, CliError> {
        let calc = &self.calculus;
        let rep = self.spinor()?;
        let lc = self.levi_civita()?;
        let gammas = gamma_matrices(calc, rep, &self.metric)?;
        let correction = connection_term(calc, rep, lc, &gammas)?;
        let d = self.dirac()?;
        let names = self.member_names();
        let gamma_map: Map<String, Value> = names
            .iter()
            .cloned()
            .zip(gammas.iter().map(matrix))
            .collect();
        let square = d.matrix() * d.matrix();
        let minimal = minimal_polynomial(d.matrix())?;
        let mut out = json!({
            "representation": rep.name(),
            "dimension": d.dim(),
            "gammas": gamma_map,
            "casimir": matrix(&casimir(calc, rep, &self.metric)?),
            "connection_term_scalar": as_scalar(&correction).as_ref().map(exact),
            "hermitian": d.is_hermitian(),
            "trace": exact(&d.matrix().trace()),
            "trace_square": exact(&square.trace()),
            "minimal_polynomial": vector(minimal.coeffs()),
        });
        match self.dirac_spectrum()? {
            Ok(spec) => {
                out["spectrum"] = spectrum_map(spec);
                out["spectrum_exact"] = spectrum_list(spec);
                out["spectrum_certified"] = json!(minimal_polynomial_check(d.matrix(), spec));
                out["spectrum_symmetric"] = json!(spec.is_symmetric());
                out["chirality"] = chirality_summary(d.matrix(), spec);
                out["eigenmodes"] = self.eigenmodes(d, spec)?;
            }
            Err(e) => {
                out["spectrum"] = Value::Null;
                out["spectrum_error"] = json!(e.to_string());
            }
        }
        Ok(out)
    }

    fn eigenmodes(&self, d: &SpinorOperator, spec: &Spectrum) -> Result<Value, CliError> {
        let sign = builtin_rep(&self.group, BuiltinRep::Sign2)?;
        let catalog = eigenmode_catalog(&self.calculus, d, self.spinor()?, &sign, spec)?;
        let candidates: Vec<Value> = catalog
            .candidates
            .iter()
            .map(|c| {
                let (status, observed) = match &c.status {
                    ModeStatus::Zero => ("zero vector", Value::Null),
                    ModeStatus::Eigenvector(l) => ("eigenvector", exact(l)),
                    ModeStatus::NotEigenvector => ("not an eigenvector", Value::Null),
                };
                json!({
                    "label": c.label,
                    "claimed": exact(&c.claimed),
                    "status": status,
                    "observed": observed,
                    "confirmed": c.confirmed(),
                })
            })
            .collect();
        let spans: Vec<Value> = catalog
            .spans
            .iter()
            .map(|s| {
                json!({
                    "eigenvalue": exact(&s.eigenvalue),
                    "span": s.span,
                    "multiplicity": s.multiplicity,
                    "gap": s.gap(),
                })
            })
            .collect();
        Ok(json!({
            "candidates": candidates,
            "spans": spans,
            "nonzero_candidates_confirmed": catalog.nonzero_candidates_confirmed(),
        }))
    }

    fn wave_section(&self) -> Result<Value, CliError> {
        let calc = &self.calculus;
        let boxop = wave_operator(calc, &self.metric)?;
        let n = calc.group_order();
        let displayed = &translation_sum(calc).scale(&Cyclotomic::from_int(2))
            - &ExactMatrix::scalar(n, &Cyclotomic::from_int(6));
        let spectrum = match rational_spectrum(boxop.matrix()) {
            Ok(spec) => json!({
                "spectrum": spectrum_map(&spec),
                "spectrum_exact": spectrum_list(&spec),
                "spectrum_certified": minimal_polynomial_check(boxop.matrix(), &spec),
            }),
            Err(e) => json!({ "spectrum": null, "spectrum_error": e.to_string() }),
        };
        let sign_modes = match builtin_rep(&self.group, BuiltinRep::Sign2) {
            Ok(sign) => {
                let mut modes = Map::new();
                for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let f = sign.matrix_element(i, j);
                    modes.insert(
                        format!("sign{}{}", i + 1, j + 1),
                        eigenvalue_of(boxop.matrix(), &f),
                    );
                }
                Value::Object(modes)
            }
            Err(_) => Value::Null,
        };
        let pw = peter_weyl_rank(&self.group).ok();
        let mut out = json!({
            "equals_2_d0_minus_6": boxop.matrix() == &displayed,
            "hermitian": boxop.is_hermitian(),
            "sign_modes": sign_modes,
            "peter_weyl_rank": pw,
        });
        if let (Value::Object(o), Value::Object(s)) = (&mut out, spectrum) {
            o.extend(s);
        }
        Ok(out)
    }

    fn spectral_action_section(&self) -> Result<Value, CliError> {
        let f = Polynomial::new(
            self.job
                .test_function
                .iter()
                .cloned()
                .map(Cyclotomic::from_rational)
                .collect(),
        );
        let cutoff = &self.job.cutoff;
        let mut out = json!({
            "test_function": self.job.test_function.iter().map(rational).collect::<Vec<_>>(),
            "cutoff": rational(cutoff),
        });
        match self.dirac_spectrum()? {
            Ok(spec) => {
                let value = spectral_action(spec, &f, cutoff)?;
                // Tr f(D̸²/Λ²) straight from the matrix
                let d = self.dirac()?.matrix();
                let scale = Cyclotomic::from_rational(cutoff * cutoff)
                    .inv()
                    .expect("cutoff is positive");
                let argument = (d * d).scale(&scale);
                let trace = f.eval_matrix(&argument).trace();
                out["value"] = exact(&value);
                out["matches_matrix_trace"] = json!(trace == value);
            }
            Err(e) => {
                out["value"] = Value::Null;
                out["spectrum_error"] = json!(e.to_string());
            }
        }
        Ok(out)
    }
}

fn tensor(calc: &Calculus, t: &Tensor2) -> Value {
    let n = calc.class_size();
    Value::Array(
        (0..n)
            .map(|i| functions(&t.coeffs()[i * n..(i + 1) * n]))
            .collect(),
    )
}

fn spectrum_map(spec: &Spectrum) -> Value {
    let map: Map<String, Value> = spec
        .pairs()
        .iter()
        .map(|(v, m)| (key(v), json!(m)))
        .collect();
    Value::Object(map)
}

fn spectrum_list(spec: &Spectrum) -> Value {
    Value::Array(
        spec.sorted()
            .iter()
            .map(|(v, m)| json!({ "eigenvalue": exact(v), "multiplicity": m }))
            .collect(),
    )
}

fn eigenvalue_of(op: &ExactMatrix, f: &[Cyclotomic]) -> Value {
    let Some(i) = f.iter().position(|x| !x.is_zero()) else {
        return json!("zero function");
    };
    let image = op.mul_vec(f);
    let lambda = &image[i] / &f[i];
    if image.iter().zip(f).all(|(a, b)| *a == &lambda * b) {
        exact(&lambda)
    } else {
        json!("not an eigenfunction")
    }
}

fn chirality_summary(op: &ExactMatrix, spec: &Spectrum) -> Value {
    let plus = chirality(op, spec, KernelInvolution::Identity);
    let minus = chirality(op, spec, KernelInvolution::Negation);
    match (plus, minus) {
        (Ok(a), Ok(b)) => json!({
            "exists": true,
            "kernel_choices_distinct": a != b,
            "trace_identity_on_kernel": exact(&a.trace()),
        }),
        (Err(e), _) | (_, Err(e)) => json!({ "exists": false, "reason": e.to_string() }),
    }
}
