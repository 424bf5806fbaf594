//! Named check suites over the model builders, with a JSON-serializable
//! outcome per check.
//!
//! Checks are independent pure computations; the runner evaluates them on a
//! bounded worker pool and merges the reports deterministically by check id.
//! Negative controls are encoded as expected-fail checks so a correct
//! implementation exits cleanly.

use crate::chain::ChainSpec;
use crate::double_row;
use crate::error::{Error, Result};
use crate::fold::{fold, fold_double, FoldingConstants};
use crate::ino::{self, InoParams};
use crate::operator::{max_abs_diff, OperatorSum};
use crate::pauli::{Gen, PauliString};
use crate::scalar::{parse_rational, Exact, Scalar};
use crate::verify::{
    check_diagonal, check_fold_identity, check_symmetry, check_twisted_minus, check_twisted_plus,
    check_yangian, classify, RelationReport, ResidualReport, SlTriple,
};
use crate::xxx::{self, Level1Variant, XxxParams};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Xxx,
    Ino,
    DoubleXxx,
    DoubleIno,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    Bulk,
    Magnetic,
    Open,
    Diagonal,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Field {
    Exact,
    Float,
}

/// Configuration of one suite run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub model: Model,
    pub boundary: Boundary,
    pub l: u32,
    /// Coupling λ as `p/q` or decimal.
    pub lambda: String,
    /// Boundary field μ as `p/q` or decimal.
    pub mu: String,
    pub kappa: Option<f64>,
    pub field: Field,
    pub edge_window: u32,
    pub tol_identity: f64,
    pub tol_edge: f64,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let ino = matches!(self.model, Model::Ino | Model::DoubleIno);
        if ino && self.kappa.is_none() {
            return Err(Error::InvalidParameter(
                "--kappa is required for the long-range models".into(),
            ));
        }
        if !ino && self.kappa.is_some() {
            return Err(Error::InvalidParameter(
                "--kappa only applies to the long-range models".into(),
            ));
        }
        if ino && self.field == Field::Exact {
            return Err(Error::InvalidParameter(
                "the long-range kernels are transcendental; use --field float".into(),
            ));
        }
        match (self.model, self.boundary) {
            (Model::DoubleXxx | Model::DoubleIno, Boundary::Diagonal) => {}
            (Model::DoubleXxx | Model::DoubleIno, _) => {
                return Err(Error::InvalidParameter(
                    "double-row models carry the diagonal boundary".into(),
                ))
            }
            (Model::Xxx | Model::Ino, Boundary::Diagonal) => {
                return Err(Error::InvalidParameter(
                    "the diagonal boundary needs a double-row model".into(),
                ))
            }
            _ => {}
        }
        if self.boundary == Boundary::Magnetic && self.mu_f64()? == 0.0 {
            return Err(Error::InvalidParameter(
                "the magnetic boundary needs mu != 0".into(),
            ));
        }
        if self.l < 2 {
            return Err(Error::InvalidParameter("suites need L >= 2".into()));
        }
        Ok(())
    }

    pub fn lambda_f64(&self) -> Result<f64> {
        Ok(parse_rational(&self.lambda)?.to_f64().unwrap_or(f64::NAN))
    }

    pub fn mu_f64(&self) -> Result<f64> {
        Ok(parse_rational(&self.mu)?.to_f64().unwrap_or(f64::NAN))
    }

    fn xxx_exact(&self) -> Result<XxxParams<Exact>> {
        XxxParams::new(
            Exact::real(parse_rational(&self.lambda)?),
            Exact::real(parse_rational(&self.mu)?),
        )
    }

    fn xxx_float(&self) -> Result<XxxParams<Complex64>> {
        XxxParams::new(
            Complex64::new(self.lambda_f64()?, 0.0),
            Complex64::new(self.mu_f64()?, 0.0),
        )
    }

    fn ino_params(&self) -> Result<InoParams> {
        InoParams::new(
            self.lambda_f64()?,
            self.kappa
                .ok_or_else(|| Error::InvalidParameter("kappa missing".into()))?,
            self.mu_f64()?,
        )
    }
}

/// Outcome of one named check; serializes to the report schema.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: String,
    /// Float max-interior, or the string "0" when exactly zero in the exact field.
    pub max_interior: serde_json::Value,
    pub constant: Option<(f64, f64)>,
    pub witness: Option<String>,
    pub params: serde_json::Value,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub pass: bool,
    #[serde(skip)]
    pub expected_fail: bool,
}

/// Whole-suite result.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Raw result of one check body, before wrapping into the report schema.
enum Body {
    Residual(ResidualReport),
    /// A plain numeric bound: passes iff value <= bound.
    Bound {
        value: f64,
        bound: f64,
    },
}

struct RawCheck {
    id: String,
    expected_fail: bool,
    informational: bool,
    body: Body,
}

impl RawCheck {
    fn residual(id: impl Into<String>, report: ResidualReport) -> Self {
        RawCheck {
            id: id.into(),
            expected_fail: false,
            informational: false,
            body: Body::Residual(report),
        }
    }

    fn bound(id: impl Into<String>, value: f64, bound: f64) -> Self {
        RawCheck {
            id: id.into(),
            expected_fail: false,
            informational: false,
            body: Body::Bound { value, bound },
        }
    }

    fn expect_fail(mut self) -> Self {
        self.expected_fail = true;
        self
    }

    fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    fn from_relations(prefix: &str, relations: Vec<RelationReport>) -> Vec<RawCheck> {
        relations
            .into_iter()
            .map(|r| RawCheck {
                id: format!("{prefix}{}", r.relation),
                expected_fail: false,
                informational: r.informational,
                body: Body::Residual(r.report),
            })
            .collect()
    }
}

type Task = Box<dyn FnOnce() -> Result<Vec<RawCheck>> + Send>;
type TaskSlot = std::sync::Mutex<Option<Result<(Vec<RawCheck>, u64)>>>;

/// Collects check tasks and runs them on up to `threads` workers.
struct Collector {
    tasks: Vec<Task>,
    params: serde_json::Value,
    exact: bool,
}

impl Collector {
    fn new(cfg: &SuiteConfig) -> Self {
        Collector {
            tasks: Vec::new(),
            params: serde_json::to_value(cfg).unwrap_or(serde_json::Value::Null),
            exact: cfg.field == Field::Exact,
        }
    }

    fn task<F>(&mut self, f: F)
    where
        F: FnOnce() -> Result<Vec<RawCheck>> + Send + 'static,
    {
        self.tasks.push(Box::new(f));
    }

    fn finish(self, threads: usize) -> Result<SuiteReport> {
        let Collector {
            tasks,
            params,
            exact,
        } = self;
        let n = tasks.len();
        let workers = threads.max(1).min(n.max(1));
        let next = AtomicUsize::new(0);
        let tasks: Vec<std::sync::Mutex<Option<Task>>> = tasks
            .into_iter()
            .map(|t| std::sync::Mutex::new(Some(t)))
            .collect();
        let mut results: Vec<TaskSlot> = Vec::new();
        results.resize_with(n, || std::sync::Mutex::new(None));
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= n {
                        break;
                    }
                    let task = tasks[idx].lock().unwrap().take().unwrap();
                    let start = Instant::now();
                    let out = task().map(|r| (r, start.elapsed().as_millis() as u64));
                    *results[idx].lock().unwrap() = Some(out);
                });
            }
        });
        let mut checks = Vec::new();
        for slot in results {
            let (raw, elapsed_ms) = slot.into_inner().unwrap().unwrap()?;
            for rc in raw {
                checks.push(wrap_check(&params, exact, rc, elapsed_ms));
            }
        }
        checks.sort_by(|a, b| a.check.cmp(&b.check));
        Ok(SuiteReport { checks })
    }
}

fn wrap_check(
    base_params: &serde_json::Value,
    exact: bool,
    rc: RawCheck,
    elapsed_ms: u64,
) -> CheckOutcome {
    {
        let mut params = base_params.clone();
        if rc.expected_fail {
            params["expected"] = serde_json::json!("fail");
        }
        if rc.informational {
            params["informational"] = serde_json::json!(true);
        }
        match rc.body {
            Body::Residual(report) => {
                let ok = report.passes();
                let pass = rc.informational || (ok != rc.expected_fail);
                let max_interior = if exact && report.max_interior == 0.0 {
                    serde_json::Value::String("0".to_string())
                } else {
                    serde_json::json!(report.max_interior)
                };
                CheckOutcome {
                    check: rc.id,
                    status: format!("{:?}", report.status),
                    max_interior,
                    constant: report.constant,
                    witness: report.witness,
                    params,
                    elapsed_ms,
                    pass,
                    expected_fail: rc.expected_fail,
                }
            }
            Body::Bound { value, bound } => {
                let ok = value <= bound;
                params["bound"] = serde_json::json!(bound);
                CheckOutcome {
                    check: rc.id,
                    status: if ok { "ExactZero" } else { "Fail" }.to_string(),
                    max_interior: serde_json::json!(value),
                    constant: None,
                    witness: None,
                    params,
                    elapsed_ms,
                    pass: rc.informational || (ok != rc.expected_fail),
                    expected_fail: rc.expected_fail,
                }
            }
        }
    }
}

/// Run the suite selected by the configuration on up to `threads` workers.
/// Checks whose id does not contain `filter` (when given) are skipped.
pub fn run_suite(cfg: &SuiteConfig, filter: Option<&str>, threads: usize) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut col = Collector::new(cfg);
    match (cfg.model, cfg.boundary, cfg.field) {
        (Model::Xxx, Boundary::Bulk, Field::Exact) => xxx_bulk(&mut col, cfg, cfg.xxx_exact()?),
        (Model::Xxx, Boundary::Bulk, Field::Float) => xxx_bulk(&mut col, cfg, cfg.xxx_float()?),
        (Model::Xxx, Boundary::Magnetic, Field::Exact) => {
            xxx_magnetic(&mut col, cfg, cfg.xxx_exact()?)
        }
        (Model::Xxx, Boundary::Magnetic, Field::Float) => {
            xxx_magnetic(&mut col, cfg, cfg.xxx_float()?)
        }
        (Model::Xxx, Boundary::Open, Field::Exact) => xxx_open(&mut col, cfg, cfg.xxx_exact()?),
        (Model::Xxx, Boundary::Open, Field::Float) => xxx_open(&mut col, cfg, cfg.xxx_float()?),
        (Model::DoubleXxx, _, Field::Exact) => double_xxx(&mut col, cfg, cfg.xxx_exact()?),
        (Model::DoubleXxx, _, Field::Float) => double_xxx(&mut col, cfg, cfg.xxx_float()?),
        (Model::Ino, Boundary::Bulk, _) => ino_bulk(&mut col, cfg)?,
        (Model::Ino, Boundary::Magnetic, _) => ino_magnetic(&mut col, cfg)?,
        (Model::Ino, Boundary::Open, _) => ino_open(&mut col, cfg)?,
        (Model::DoubleIno, _, _) => double_ino(&mut col, cfg)?,
        (Model::Xxx | Model::Ino, Boundary::Diagonal, _) => unreachable!("validated"),
    }
    let mut report = col.finish(threads)?;
    if let Some(f) = filter {
        report.checks.retain(|c| c.check.contains(f));
        if report.checks.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "no checks match suite filter `{f}`"
            )));
        }
    }
    Ok(report)
}

fn e0_triple<S: Scalar>(chain: ChainSpec) -> Result<SlTriple<S>> {
    Ok(SlTriple {
        plus: xxx::e0(chain, Gen::Plus)?,
        minus: xxx::e0(chain, Gen::Minus)?,
        z: xxx::e0(chain, Gen::Z)?,
    })
}

fn xxx_bulk<S: Scalar>(col: &mut Collector, cfg: &SuiteConfig, p: XxxParams<S>) {
    let chain = ChainSpec::full(cfg.l);
    let tol = cfg.tol_identity;
    let w = cfg.edge_window;
    let lambda = p.lambda.clone();

    {
        let p = p.clone();
        col.task(move || {
            let h = xxx::h_xxx(chain, &p)?;
            let mut out = vec![RawCheck::residual(
                "hermitian:H",
                classify(&h.adjoint().sub(&h)?, w, tol),
            )];
            for a in Gen::ALL {
                let e = xxx::e0::<S>(chain, a)?;
                out.push(RawCheck::residual(
                    format!("lie:[H,E0{a}]"),
                    check_symmetry(&h, &e, w, tol)?,
                ));
            }
            Ok(out)
        });
    }
    for a in Gen::ALL {
        for (tag, v) in [
            ("", Level1Variant::Full),
            ("'", Level1Variant::Prime),
            ("''", Level1Variant::DoublePrime),
        ] {
            let p = p.clone();
            col.task(move || {
                let h = xxx::h_xxx(chain, &p)?;
                let q = xxx::e1(chain, &p, a, v)?;
                Ok(vec![RawCheck::residual(
                    format!("yangian-sym:[H,E1{tag}{a}]"),
                    check_symmetry(&h, &q, w, tol)?,
                )])
            });
        }
    }
    col.task(move || {
        let e1t = SlTriple {
            plus: xxx::e1(chain, &p, Gen::Plus, Level1Variant::Full)?,
            minus: xxx::e1(chain, &p, Gen::Minus, Level1Variant::Full)?,
            z: xxx::e1(chain, &p, Gen::Z, Level1Variant::Full)?,
        };
        let rel = check_yangian(&e0_triple(chain)?, &e1t, &lambda, w, tol)?;
        Ok(RawCheck::from_relations("relations:", rel))
    });
}

fn xxx_magnetic<S: Scalar>(col: &mut Collector, cfg: &SuiteConfig, p: XxxParams<S>) {
    let full = ChainSpec::full(cfg.l);
    let half = ChainSpec::half(cfg.l);
    let tol = cfg.tol_identity;
    let w = cfg.edge_window;
    let l = cfg.l;

    {
        let p = p.clone();
        col.task(move || {
            // fold(H) = 2 Hmu + constant, with the constant matching the table.
            let table = FoldingConstants::xxx_magnetic(&p.lambda, &p.mu)?;
            let folded = fold(&xxx::h_xxx(full, &p)?, &table)?;
            let kpm = table.get(Some(Gen::Plus), Some(Gen::Minus));
            let kmp = table.get(Some(Gen::Minus), Some(Gen::Plus));
            let expect_const = p
                .lambda
                .mul(&S::from_ratio(-1, 2))
                .mul(&S::one().add(kpm).add(kmp));
            let rhs = xxx::h_magnetic(half, &p)?
                .scale(&S::from_int(2))
                .add(&OperatorSum::constant(half, expect_const))?;
            let r = check_fold_identity("", &folded, &rhs, false, tol)?;
            Ok(vec![RawCheck::residual("fold:fH1", r.report)])
        });
    }
    for a in [Gen::Plus, Gen::Minus] {
        for (tag, v) in [
            ("", Level1Variant::Full),
            ("'", Level1Variant::Prime),
            ("''", Level1Variant::DoublePrime),
        ] {
            let p = p.clone();
            col.task(move || {
                let table = FoldingConstants::xxx_magnetic(&p.lambda, &p.mu)?;
                let lhs = fold(&xxx::e1(full, &p, a, v)?, &table)?;
                let rhs = xxx::x(half, &p, a, v)?.scale(&S::from_int(2));
                let r = check_fold_identity("", &lhs, &rhs, false, tol)?;
                Ok(vec![RawCheck::residual(
                    format!("fold:fE1{tag}{a}=2X{tag}{a}"),
                    r.report,
                )])
            });
        }
    }
    {
        let p = p.clone();
        col.task(move || {
            // fold(E1z) = (λ/2)L(k-+ − k+-)·1 − (λ/2)(k+- + k-+)·E0z⁻
            let table = FoldingConstants::xxx_magnetic(&p.lambda, &p.mu)?;
            let kpm = table.get(Some(Gen::Plus), Some(Gen::Minus));
            let kmp = table.get(Some(Gen::Minus), Some(Gen::Plus));
            let lhs = fold(&xxx::e1(full, &p, Gen::Z, Level1Variant::Full)?, &table)?;
            let half_lambda = p.lambda.mul(&S::from_ratio(1, 2));
            let c0 = half_lambda.mul(&S::from_int(l as i64)).mul(&kmp.sub(kpm));
            let c1 = half_lambda.mul(&kpm.add(kmp)).neg();
            let rhs = xxx::e0::<S>(half, Gen::Z)?
                .scale(&c1)
                .add(&OperatorSum::constant(half, c0))?;
            let r = check_fold_identity("", &lhs, &rhs, false, tol)?;
            Ok(vec![RawCheck::residual("fold:fE1z-closed-form", r.report)])
        });
    }
    {
        let p = p.clone();
        col.task(move || {
            let hmu = xxx::h_magnetic(half, &p)?;
            let mut out = vec![RawCheck::residual(
                "sym:[Hmu,E0z]",
                check_symmetry(&hmu, &xxx::e0::<S>(half, Gen::Z)?, w, tol)?,
            )];
            for a in [Gen::Plus, Gen::Minus] {
                let xa = xxx::x(half, &p, a, Level1Variant::Full)?;
                out.push(RawCheck::residual(
                    format!("sym:[Hmu,X{a}]"),
                    check_symmetry(&hmu, &xa, w, tol)?,
                ));
            }
            // Negative control: naive truncation of E1+ is not a symmetry.
            let naive = xxx::e1(half, &p, Gen::Plus, Level1Variant::Full)?;
            out.push(
                RawCheck::residual(
                    "control:naive-truncated-E1+",
                    check_symmetry(&hmu, &naive, w, tol)?,
                )
                .expect_fail(),
            );
            Ok(out)
        });
    }
    col.task(move || {
        // Twisted Yangian relations with c = −λ/2μ.
        let c = p.lambda.div(&p.mu).mul(&S::from_ratio(-1, 2));
        let rel = check_twisted_plus(
            &xxx::e0::<S>(half, Gen::Z)?,
            &xxx::x(half, &p, Gen::Plus, Level1Variant::Full)?,
            &xxx::x(half, &p, Gen::Minus, Level1Variant::Full)?,
            &p.lambda,
            &c,
            w,
            tol,
        )?;
        Ok(RawCheck::from_relations("relations:", rel))
    });
}

fn xxx_open<S: Scalar>(col: &mut Collector, cfg: &SuiteConfig, p: XxxParams<S>) {
    let full = ChainSpec::full(cfg.l);
    let half = ChainSpec::half(cfg.l);
    let tol = cfg.tol_identity;
    let w = cfg.edge_window;

    {
        let p = p.clone();
        col.task(move || {
            // fold(H) = 2H0 − (3/2)λ
            let table = FoldingConstants::<S>::all_ones();
            let folded = fold(&xxx::h_xxx(full, &p)?, &table)?;
            let rhs = xxx::h_xxx(half, &p)?
                .scale(&S::from_int(2))
                .add(&OperatorSum::constant(
                    half,
                    p.lambda.mul(&S::from_ratio(-3, 2)),
                ))?;
            let r = check_fold_identity("", &folded, &rhs, false, tol)?;
            Ok(vec![RawCheck::residual("fold:fH-all-ones", r.report)])
        });
    }
    for a in Gen::ALL {
        let p1 = p.clone();
        col.task(move || {
            let table = FoldingConstants::<S>::all_ones();
            let lhs = fold(&xxx::e1(full, &p1, a, Level1Variant::Full)?, &table)?;
            let rhs = xxx::e0::<S>(half, a)?.scale(&p1.lambda.neg());
            let r = check_fold_identity("", &lhs, &rhs, false, tol)?;
            Ok(vec![RawCheck::residual(
                format!("fold:fE1{a}=-lambda*E0{a}"),
                r.report,
            )])
        });
        let p2 = p.clone();
        col.task(move || {
            let table = FoldingConstants::<S>::all_ones();
            let lhs = fold(&xxx::e2_tilde(full, &p2, a)?, &table)?;
            let rhs = xxx::g(half, &p2, a)?.scale(&S::from_ratio(8, 3));
            let r = check_fold_identity("", &lhs, &rhs, false, tol)?;
            Ok(vec![RawCheck::residual(
                format!("fold:fEt2{a}=(8/3)G{a}"),
                r.report,
            )])
        });
        let p3 = p.clone();
        col.task(move || {
            let h0 = xxx::h_xxx(half, &p3)?;
            let ga = xxx::g(half, &p3, a)?;
            Ok(vec![RawCheck::residual(
                format!("sym:[H0,G{a}]"),
                check_symmetry(&h0, &ga, w, tol)?,
            )])
        });
    }
    {
        let p = p.clone();
        col.task(move || {
            // Folding is not an algebra homomorphism: a concrete witness pair.
            let _ = &p;
            let table = FoldingConstants::<S>::all_ones();
            let a_op = OperatorSum::from_terms(
                full,
                vec![(
                    PauliString::from_entries(vec![
                        (crate::chain::Site::single(0), Gen::Plus),
                        (crate::chain::Site::single(1), Gen::Z),
                    ]),
                    S::one(),
                )],
            )?;
            let b_op = OperatorSum::from_terms(
                full,
                vec![(
                    PauliString::single(crate::chain::Site::single(0), Gen::Minus),
                    S::one(),
                )],
            )?;
            let lhs = fold(&a_op.multiply(&b_op)?, &table)?;
            let rhs = fold(&a_op, &table)?.multiply(&fold(&b_op, &table)?)?;
            let r = check_fold_identity("", &lhs, &rhs, false, tol)?;
            Ok(vec![RawCheck::residual(
                "witness:fold-is-not-a-homomorphism",
                r.report,
            )
            .expect_fail()])
        });
    }
    col.task(move || {
        let g = SlTriple {
            plus: xxx::g(half, &p, Gen::Plus)?,
            minus: xxx::g(half, &p, Gen::Minus)?,
            z: xxx::g(half, &p, Gen::Z)?,
        };
        let rel = check_twisted_minus(&e0_triple(half)?, &g, &p.lambda, w, tol)?;
        Ok(RawCheck::from_relations("relations:", rel))
    });
}

fn double_xxx<S: Scalar>(col: &mut Collector, cfg: &SuiteConfig, p: XxxParams<S>) {
    use double_row::Combo;
    let full = ChainSpec::full_two_row(cfg.l);
    let half = ChainSpec::half_two_row(cfg.l);
    let tol = cfg.tol_identity;
    let w = cfg.edge_window;

    {
        let p = p.clone();
        col.task(move || {
            let table = FoldingConstants::<S>::all_ones();
            let hoo = double_row::h_double_xxx(full, &p)?;
            let hdelta = double_row::h_delta_xxx(half, &p)?;
            let r = check_fold_identity(
                "",
                &fold_double(&hoo, &table)?,
                &hdelta.scale(&S::from_int(2)),
                false,
                tol,
            )?;
            Ok(vec![RawCheck::residual("fold:fdHoo=2Hdelta", r.report)])
        });
    }
    for a in Gen::ALL {
        let p1 = p.clone();
        col.task(move || {
            let table = FoldingConstants::<S>::all_ones();
            let two = S::from_int(2);
            let mut out = Vec::new();
            let b1 = double_row::ab_xxx(full, &p1, a, 1, Combo::B)?;
            let ya = double_row::y_xxx(half, &p1, a)?;
            let r =
                check_fold_identity("", &fold_double(&b1, &table)?, &ya.scale(&two), false, tol)?;
            out.push(RawCheck::residual(format!("fold:fdB1{a}=2Y{a}"), r.report));
            let a1 = double_row::ab_xxx(full, &p1, a, 1, Combo::A)?;
            out.push(RawCheck::residual(
                format!("fold:fdA1{a}=0"),
                classify(&fold_double(&a1, &table)?, 0, tol),
            ));
            let a0 = double_row::ab_xxx(full, &p1, a, 0, Combo::A)?;
            let a0_half = double_row::ab_xxx(half, &p1, a, 0, Combo::A)?;
            let r = check_fold_identity(
                "",
                &fold_double(&a0, &table)?,
                &a0_half.scale(&two),
                false,
                tol,
            )?;
            out.push(RawCheck::residual(format!("fold:fdA0{a}=2A0{a}"), r.report));
            let b0 = double_row::ab_xxx(full, &p1, a, 0, Combo::B)?;
            out.push(RawCheck::residual(
                format!("fold:fdB0{a}=0"),
                classify(&fold_double(&b0, &table)?, 0, tol),
            ));
            Ok(out)
        });
        let p2 = p.clone();
        col.task(move || {
            let hdelta = double_row::h_delta_xxx(half, &p2)?;
            let a0_half = double_row::ab_xxx(half, &p2, a, 0, Combo::A)?;
            let ya = double_row::y_xxx(half, &p2, a)?;
            Ok(vec![
                RawCheck::residual(
                    format!("sym:[Hdelta,A0{a}]"),
                    check_symmetry(&hdelta, &a0_half, w, tol)?,
                ),
                RawCheck::residual(
                    format!("sym:[Hdelta,Y{a}]"),
                    check_symmetry(&hdelta, &ya, w, tol)?,
                ),
            ])
        });
    }
    col.task(move || {
        let a0t = SlTriple {
            plus: double_row::ab_xxx(half, &p, Gen::Plus, 0, Combo::A)?,
            minus: double_row::ab_xxx(half, &p, Gen::Minus, 0, Combo::A)?,
            z: double_row::ab_xxx(half, &p, Gen::Z, 0, Combo::A)?,
        };
        let yt = SlTriple {
            plus: double_row::y_xxx(half, &p, Gen::Plus)?,
            minus: double_row::y_xxx(half, &p, Gen::Minus)?,
            z: double_row::y_xxx(half, &p, Gen::Z)?,
        };
        let rel = check_diagonal(&a0t, &yt, &p.lambda, w, tol)?;
        Ok(RawCheck::from_relations("relations:", rel))
    });
}

fn cfl(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn ino_bulk(col: &mut Collector, cfg: &SuiteConfig) -> Result<()> {
    let p = cfg.ino_params()?;
    let xp = cfg.xxx_float()?;
    let chain = ChainSpec::full(cfg.l);
    let tol = cfg.tol_identity;
    let w = cfg.edge_window;
    let l = cfg.l;

    col.task(move || {
        // Kernel identities over the chain's separation range.
        let k = p.kernels();
        let mut split_err: f64 = 0.0;
        let mut p_identity_err: f64 = 0.0;
        for z in 1..=(2 * l as i64) {
            for s in [z, -z] {
                split_err = split_err.max((k.w_prime(s) + k.w_double_prime(s) - k.w(s)).abs());
                let coth = 1.0 / (p.kappa * s as f64).tanh();
                let alt = p.kappa.sinh().powi(2) * (coth * coth - 1.0);
                p_identity_err = p_identity_err.max((k.p(s) - alt).abs());
            }
        }
        Ok(vec![
            RawCheck::bound("kernel:w-split", split_err, 1e-12),
            RawCheck::bound("kernel:p-vs-coth", p_identity_err, 1e-12),
        ])
    });
    col.task(move || {
        let h = ino::h_kappa(chain, &p)?;
        let mut out = Vec::new();
        for a in Gen::ALL {
            let e = xxx::e0::<Complex64>(chain, a)?;
            out.push(RawCheck::residual(
                format!("lie:[Hk,E0{a}]"),
                check_symmetry(&h, &e, w, tol)?,
            ));
        }
        // Long-range residuals decay like e^{-2κ·distance}; widen the bound.
        let envelope = 1e-5f64.max(10.0 * (-2.0 * p.kappa * w as f64).exp());
        for a in Gen::ALL {
            let q = ino::e1_kappa(chain, &p, a, Level1Variant::Full)?;
            out.push(RawCheck::residual(
                format!("yangian-sym:[Hk,Ek1{a}]"),
                check_symmetry(&h, &q, w, envelope)?,
            ));
        }
        Ok(out)
    });
    col.task(move || {
        let e1t = SlTriple {
            plus: ino::e1_kappa(chain, &p, Gen::Plus, Level1Variant::Full)?,
            minus: ino::e1_kappa(chain, &p, Gen::Minus, Level1Variant::Full)?,
            z: ino::e1_kappa(chain, &p, Gen::Z, Level1Variant::Full)?,
        };
        let rel = check_yangian(&e0_triple(chain)?, &e1t, &cfl(p.lambda), w, 1e-9)?;
        Ok(RawCheck::from_relations("relations:", rel))
    });
    col.task(move || {
        // Nearest-neighbour limit at κ = 20.
        let p20 = InoParams::new(p.lambda, 20.0, p.mu)?;
        let d = max_abs_diff(&ino::h_kappa(chain, &p20)?, &xxx::h_xxx(chain, &xp)?)?;
        Ok(vec![RawCheck::bound("limit:Hk->Hxxx@kappa=20", d, 1e-8)])
    });
    Ok(())
}

fn ino_magnetic(col: &mut Collector, cfg: &SuiteConfig) -> Result<()> {
    let p = cfg.ino_params()?;
    let xp = cfg.xxx_float()?;
    let full = ChainSpec::full(cfg.l);
    let half = ChainSpec::half(cfg.l);
    let l = cfg.l;
    let tol_edge = cfg.tol_edge;
    let w = cfg.edge_window;
    let integrable = p.mu == p.lambda || p.mu == -p.lambda;

    col.task(move || {
        // fold(Hk) − 2(Hk⁻ + Hlo + Mmu) is a multiple of the identity; the
        // multiple is reported, not asserted in closed form.
        let table = FoldingConstants::xxx_magnetic(&cfl(p.lambda), &cfl(p.mu))?;
        let folded = fold(&ino::h_kappa(full, &p)?, &table)?;
        let rhs = ino::h_magnetic_kappa(half, &p)?.scale(&cfl(2.0));
        let r = check_fold_identity("", &folded, &rhs, true, 1e-12)?;
        Ok(vec![RawCheck::residual(
            "fold:fHk1-constant-only",
            r.report,
        )])
    });
    col.task(move || {
        // f(Ez_k1) under the long-range magnetic table is a pure constant and
        // commutes with the Hamiltonian.
        let ino_table = FoldingConstants::<Complex64>::ino_magnetic(true);
        let fez = fold(
            &ino::e1_kappa(full, &p, Gen::Z, Level1Variant::Full)?,
            &ino_table,
        )?;
        let hmu = ino::h_magnetic_kappa(half, &p)?;
        Ok(vec![
            RawCheck::bound("fold:fEzk-constant-only", fez.max_abs_non_identity(), 1e-12),
            RawCheck::bound("sym:[Hmuk,fEzk]", hmu.commutator(&fez)?.max_abs(), 1e-12),
        ])
    });
    for a in [Gen::Plus, Gen::Minus] {
        col.task(move || {
            // Integrability: the boundary charge commutes (interior) iff μ = ±λ.
            let hmu = ino::h_magnetic_kappa(half, &p)?;
            let interior_window = l - 1 - l.div_ceil(2);
            let envelope = tol_edge.max(10.0 * (-2.0 * p.kappa * interior_window as f64).exp());
            let xk = ino::x_kappa_candidate(half, &p, a)?;
            let r = check_symmetry(&hmu, &xk, interior_window, envelope)?;
            let rc = RawCheck::residual(format!("sym:[Hmuk,Xk{a}]"), r);
            // The broken symmetry leaves an O(1e-2) residual near site 0; it
            // can only be told apart from truncation tails when the envelope
            // sits below it. Otherwise the check is reported, not gated.
            let discriminating = envelope < 1e-2;
            Ok(vec![match (integrable, discriminating) {
                (true, _) => rc,
                (false, true) => rc.expect_fail(),
                (false, false) => rc.informational(),
            }])
        });
    }
    if integrable {
        col.task(move || {
            let c = cfl(-p.lambda / (2.0 * p.mu));
            let rel = check_twisted_plus(
                &xxx::e0::<Complex64>(half, Gen::Z)?,
                &ino::x_kappa(half, &p, Gen::Plus)?,
                &ino::x_kappa(half, &p, Gen::Minus)?,
                &cfl(p.lambda),
                &c,
                w,
                1e-9,
            )?;
            Ok(RawCheck::from_relations("relations:", rel))
        });
    }
    col.task(move || {
        // κ → ∞ limits of the boundary operators.
        let p20 = InoParams::new(p.lambda, 20.0, p.mu)?;
        let mut sz0 = OperatorSum::zero(half);
        sz0.add_term(
            PauliString::single(crate::chain::Site::single(0), Gen::Z),
            cfl(p.mu),
        )?;
        let mut out = vec![
            RawCheck::bound(
                "limit:Mk->mu*sz0@kappa=20",
                max_abs_diff(&ino::m_mu(half, &p20)?, &sz0)?,
                1e-8,
            ),
            RawCheck::bound(
                "limit:Hlo->0@kappa=20",
                ino::h_lo(half, &p20)?.max_abs(),
                1e-12,
            ),
        ];
        for a in [Gen::Plus, Gen::Minus] {
            let d = max_abs_diff(
                &ino::x_kappa_candidate(half, &p20, a)?,
                &xxx::x(half, &xp, a, Level1Variant::Full)?,
            )?;
            out.push(RawCheck::bound(
                format!("limit:Xk{a}->X{a}@kappa=20"),
                d,
                1e-8,
            ));
        }
        Ok(out)
    });
    Ok(())
}

fn ino_open(col: &mut Collector, cfg: &SuiteConfig) -> Result<()> {
    let p = cfg.ino_params()?;
    let mut xp_open = cfg.xxx_float()?;
    xp_open.mu = cfl(0.0);
    let full = ChainSpec::full(cfg.l);
    let half = ChainSpec::half(cfg.l);
    let l = cfg.l;
    let tol_edge = cfg.tol_edge;

    col.task(move || {
        // fold(Hk) = 2(Hk⁻ − Hlo) − (3λ/2) Σ p(2i−1)
        let table = FoldingConstants::<Complex64>::all_ones();
        let folded = fold(&ino::h_kappa(full, &p)?, &table)?;
        let k = p.kernels();
        let constant: f64 = half
            .index_range()
            .map(|i| -1.5 * p.lambda * k.p((2 * i - 1) as i64))
            .sum();
        let rhs = ino::h_open_kappa(half, &p)?
            .scale(&cfl(2.0))
            .add(&OperatorSum::constant(half, cfl(constant)))?;
        let r = check_fold_identity("", &folded, &rhs, false, 1e-12)?;
        Ok(vec![RawCheck::residual("fold:fHk-all-ones", r.report)])
    });
    for a in Gen::ALL {
        col.task(move || {
            // The two constructions of Gk agree.
            let table = FoldingConstants::<Complex64>::all_ones();
            let direct = ino::g_kappa(half, &p, a)?;
            let via_fold = fold(&ino::e2_tilde_kappa(full, &p, a)?, &table)?.scale(&cfl(3.0 / 8.0));
            Ok(vec![RawCheck::bound(
                format!("dual:Gk{a}-direct-vs-fold"),
                max_abs_diff(&direct, &via_fold)?,
                1e-10,
            )])
        });
        col.task(move || {
            // Boundary symmetry up to the terms at infinity: the residual is
            // far-edge-localized with the usual e^{-2κ·depth} envelope.
            let h0 = ino::h_open_kappa(half, &p)?;
            let interior_window = l - 1 - l.div_ceil(2);
            let envelope = tol_edge.max(10.0 * (-2.0 * p.kappa * interior_window as f64).exp());
            let r = check_symmetry(&h0, &ino::g_kappa(half, &p, a)?, interior_window, envelope)?;
            Ok(vec![RawCheck::residual(format!("sym:[H0k,Gk{a}]"), r)])
        });
        let xp = xp_open.clone();
        col.task(move || {
            let p20 = InoParams::new(p.lambda, 20.0, 0.0)?;
            let d = max_abs_diff(&ino::g_kappa(half, &p20, a)?, &xxx::g(half, &xp, a)?)?;
            Ok(vec![RawCheck::bound(
                format!("limit:Gk{a}->G{a}@kappa=20"),
                d,
                1e-8,
            )])
        });
    }
    col.task(move || {
        let x = SlTriple {
            plus: xxx::e0::<Complex64>(half, Gen::Plus)?,
            minus: xxx::e0::<Complex64>(half, Gen::Minus)?,
            z: xxx::e0::<Complex64>(half, Gen::Z)?,
        };
        let g = SlTriple {
            plus: ino::g_kappa(half, &p, Gen::Plus)?,
            minus: ino::g_kappa(half, &p, Gen::Minus)?,
            z: ino::g_kappa(half, &p, Gen::Z)?,
        };
        let rel = check_twisted_minus(&x, &g, &cfl(p.lambda), 1, 1e-9)?;
        Ok(RawCheck::from_relations("relations:", rel))
    });
    Ok(())
}

fn double_ino(col: &mut Collector, cfg: &SuiteConfig) -> Result<()> {
    use double_row::Combo;
    let p = cfg.ino_params()?;
    let xp = cfg.xxx_float()?;
    let full = ChainSpec::full_two_row(cfg.l);
    let half = ChainSpec::half_two_row(cfg.l);
    let w = cfg.edge_window;
    let tol_edge = cfg.tol_edge;

    col.task(move || {
        let table = FoldingConstants::<Complex64>::all_ones();
        let hoo = double_row::h_double_ino(full, &p)?;
        let rhs = double_row::h_delta_ino(half, &p)?.scale(&cfl(2.0));
        Ok(vec![RawCheck::bound(
            "fold:fdHook=2(Hook+Dk)",
            max_abs_diff(&fold_double(&hoo, &table)?, &rhs)?,
            1e-12,
        )])
    });
    for a in Gen::ALL {
        col.task(move || {
            let table = FoldingConstants::<Complex64>::all_ones();
            let b1 = double_row::ab_ino(full, &p, a, 1, Combo::B)?;
            let yk = double_row::y_ino(half, &p, a)?;
            let a1 = double_row::ab_ino(full, &p, a, 1, Combo::A)?;
            Ok(vec![
                RawCheck::bound(
                    format!("dual:Yk{a}-direct-vs-fold"),
                    max_abs_diff(&fold_double(&b1, &table)?.scale(&cfl(0.5)), &yk)?,
                    1e-10,
                ),
                RawCheck::bound(
                    format!("fold:fdAk1{a}=0"),
                    fold_double(&a1, &table)?.max_abs(),
                    1e-10,
                ),
            ])
        });
        col.task(move || {
            let hdelta = double_row::h_delta_ino(half, &p)?;
            let envelope = tol_edge.max(10.0 * (-2.0 * p.kappa * w as f64).exp());
            let yk = double_row::y_ino(half, &p, a)?;
            Ok(vec![RawCheck::residual(
                format!("sym:[Hdk,Yk{a}]"),
                check_symmetry(&hdelta, &yk, w, envelope)?,
            )])
        });
        let xp = xp.clone();
        col.task(move || {
            let p20 = InoParams::new(p.lambda, 20.0, p.mu)?;
            let d = max_abs_diff(
                &double_row::y_ino(half, &p20, a)?,
                &double_row::y_xxx(half, &xp, a)?,
            )?;
            Ok(vec![RawCheck::bound(
                format!("limit:Yk{a}->Y{a}@kappa=20"),
                d,
                1e-9,
            )])
        });
    }
    col.task(move || {
        let a0t = SlTriple {
            plus: double_row::ab_ino(half, &p, Gen::Plus, 0, Combo::A)?,
            minus: double_row::ab_ino(half, &p, Gen::Minus, 0, Combo::A)?,
            z: double_row::ab_ino(half, &p, Gen::Z, 0, Combo::A)?,
        };
        let yt = SlTriple {
            plus: double_row::y_ino(half, &p, Gen::Plus)?,
            minus: double_row::y_ino(half, &p, Gen::Minus)?,
            z: double_row::y_ino(half, &p, Gen::Z)?,
        };
        let rel = check_diagonal(&a0t, &yt, &cfl(p.lambda), w, 1e-8)?;
        Ok(RawCheck::from_relations("relations:", rel))
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(model: Model, boundary: Boundary, l: u32, mu: &str, field: Field) -> SuiteConfig {
        SuiteConfig {
            model,
            boundary,
            l,
            lambda: "1".into(),
            mu: mu.into(),
            kappa: matches!(model, Model::Ino | Model::DoubleIno).then_some(1.0),
            field,
            edge_window: 2,
            tol_identity: crate::verify::TOL_IDENTITY,
            tol_edge: crate::verify::TOL_EDGE,
            seed: 0,
        }
    }

    #[test]
    fn validation_rejects_bad_combinations() {
        let mut c = cfg(Model::Ino, Boundary::Bulk, 3, "0", Field::Float);
        c.kappa = None;
        assert!(c.validate().is_err());
        let c = cfg(Model::Ino, Boundary::Bulk, 3, "0", Field::Exact);
        assert!(c.validate().is_err());
        let c = cfg(Model::Xxx, Boundary::Magnetic, 3, "0", Field::Exact);
        assert!(c.validate().is_err());
        let c = cfg(Model::Xxx, Boundary::Diagonal, 3, "0", Field::Exact);
        assert!(c.validate().is_err());
        let c = cfg(Model::DoubleXxx, Boundary::Magnetic, 3, "1", Field::Exact);
        assert!(c.validate().is_err());
    }

    #[test]
    fn xxx_magnetic_suite_passes() {
        let c = cfg(Model::Xxx, Boundary::Magnetic, 4, "3/2", Field::Exact);
        let report = run_suite(&c, None, 2).unwrap();
        for chk in &report.checks {
            assert!(
                chk.pass,
                "{} failed: {:?} {:?}",
                chk.check, chk.status, chk.witness
            );
        }
        assert!(report.all_pass());
    }

    #[test]
    fn suite_filter_selects_checks() {
        let c = cfg(Model::Xxx, Boundary::Bulk, 3, "0", Field::Exact);
        let report = run_suite(&c, Some("lie:"), 1).unwrap();
        assert!(report.checks.iter().all(|c| c.check.starts_with("lie:")));
        assert!(run_suite(&c, Some("nonexistent"), 1).is_err());
    }
}
