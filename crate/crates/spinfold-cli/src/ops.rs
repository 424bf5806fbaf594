//! Operator-id registry: maps CLI identifiers onto the model builders.
//!
//! Identifiers (whitespace is ignored, so `Gk z` works):
//!
//! Nearest-neighbour, single row
//!   E0+ E0- E0z                      Lie charges (full line)
//!   E1a E1'a E1''a   (a ∈ +,-,z)     level-1 charges (full line)
//!   E2a, E2ta                        level-2 and corrected level-2 (full line)
//!   Hxxx                             bulk Hamiltonian (full line)
//!   Hmu, H0                          boundary Hamiltonians (half line)
//!   X+ X- X'+ X'- X''+ X''-          magnetic boundary charges (half line)
//!   G+ G- Gz                         open boundary charges (half line)
//!
//! Long-range (requires --kappa)
//!   Hk, Ek1a, Ek1'a, Ek1''a, Ek2a, Ek2ta    full line
//!   Hk-, Hklo, Mkmu, Hkmu, Hk0              half line
//!   Xk+ Xk-, Gk+ Gk- Gkz                    half line
//!
//! Double row (--kind xxx|ino or a double-* model)
//!   Hoo, A0a A1a B0a B1a             full line, two rows
//!   Hdelta, Y+ Y- Yz                 half line, two rows
//!   Dk, Yk+ Yk- Ykz                  half line, two rows (long-range)

use num_complex::Complex64;
use spinfold_core::chain::ChainSpec;
use spinfold_core::double_row::{self, Combo};
use spinfold_core::error::{Error, Result};
use spinfold_core::ino::{self, InoParams};
use spinfold_core::operator::OperatorSum;
use spinfold_core::scalar::{parse_rational, Exact};
use spinfold_core::xxx::{self, Level1Variant, XxxParams};
use spinfold_core::Gen;

/// Operator with runtime-selected coefficient field.
#[derive(Clone, Debug)]
pub enum DynOp {
    Exact(OperatorSum<Exact>),
    Float(OperatorSum<Complex64>),
}

impl DynOp {
    pub fn chain(&self) -> ChainSpec {
        match self {
            DynOp::Exact(o) => o.chain(),
            DynOp::Float(o) => o.chain(),
        }
    }

    pub fn n_terms(&self) -> usize {
        match self {
            DynOp::Exact(o) => o.n_terms(),
            DynOp::Float(o) => o.n_terms(),
        }
    }

    pub fn render(&self, suppress: f64) -> String {
        match self {
            DynOp::Exact(o) => o.render(suppress),
            DynOp::Float(o) => o.render(suppress),
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        match self {
            DynOp::Exact(o) => o.adjoint() == *o,
            DynOp::Float(o) => o
                .adjoint()
                .sub(o)
                .map(|d| d.max_abs() <= tol)
                .unwrap_or(false),
        }
    }

    pub fn scale_rational(&self, num_den: &str) -> Result<DynOp> {
        let r = parse_rational(num_den)?;
        Ok(match self {
            DynOp::Exact(o) => DynOp::Exact(o.scale(&Exact::real(r))),
            DynOp::Float(o) => {
                use num_traits::ToPrimitive;
                DynOp::Float(o.scale(&Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)))
            }
        })
    }

    pub fn sub(&self, rhs: &DynOp) -> Result<DynOp> {
        match (self, rhs) {
            (DynOp::Exact(a), DynOp::Exact(b)) => Ok(DynOp::Exact(a.sub(b)?)),
            (DynOp::Float(a), DynOp::Float(b)) => Ok(DynOp::Float(a.sub(b)?)),
            _ => Err(Error::InvalidParameter(
                "cannot mix exact and float operators".into(),
            )),
        }
    }

    pub fn support_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        let count = |len: usize, hist: &mut std::collections::BTreeMap<usize, usize>| {
            *hist.entry(len).or_insert(0) += 1;
        };
        match self {
            DynOp::Exact(o) => o.terms().for_each(|(s, _)| count(s.len(), &mut hist)),
            DynOp::Float(o) => o.terms().for_each(|(s, _)| count(s.len(), &mut hist)),
        }
        hist.into_iter().collect()
    }
}

/// Everything operator construction needs.
pub struct BuildCtx {
    pub l: u32,
    pub lambda: String,
    pub mu: String,
    pub kappa: Option<f64>,
    pub exact: bool,
    /// Double-row family: false = nearest-neighbour, true = long-range.
    pub double_ino: bool,
}

impl BuildCtx {
    fn xxx_exact(&self) -> Result<XxxParams<Exact>> {
        XxxParams::new(
            Exact::real(parse_rational(&self.lambda)?),
            Exact::real(parse_rational(&self.mu)?),
        )
    }

    fn xxx_float(&self) -> Result<XxxParams<Complex64>> {
        use num_traits::ToPrimitive;
        let lam = parse_rational(&self.lambda)?.to_f64().unwrap_or(f64::NAN);
        let mu = parse_rational(&self.mu)?.to_f64().unwrap_or(f64::NAN);
        XxxParams::new(Complex64::new(lam, 0.0), Complex64::new(mu, 0.0))
    }

    fn ino(&self) -> Result<InoParams> {
        use num_traits::ToPrimitive;
        let lam = parse_rational(&self.lambda)?.to_f64().unwrap_or(f64::NAN);
        let mu = parse_rational(&self.mu)?.to_f64().unwrap_or(f64::NAN);
        let kappa = self.kappa.ok_or_else(|| {
            Error::InvalidParameter("--kappa is required for long-range operators".into())
        })?;
        InoParams::new(lam, kappa, mu)
    }
}

fn gen_of(c: char) -> Result<Gen> {
    match c {
        '+' => Ok(Gen::Plus),
        '-' => Ok(Gen::Minus),
        'z' => Ok(Gen::Z),
        _ => Err(Error::Parse(format!("bad operator component `{c}`"))),
    }
}

/// Split a component letter and optional prime marks off an id. Primes may
/// sit on either side of the component: `E1''+` and `E1z''` both parse.
fn split_variant<'a>(body: &'a str, id: &str) -> Result<(&'a str, Level1Variant, Gen)> {
    let unknown = || Error::UnknownOperator(id.to_string());
    let mut rest = body;
    let mut primes = 0usize;
    while let Some(stripped) = rest.strip_suffix('\'') {
        rest = stripped;
        primes += 1;
    }
    if rest.is_empty() {
        return Err(unknown());
    }
    let (mut head, a) = rest.split_at(rest.len() - 1);
    let a = gen_of(a.chars().next().unwrap()).map_err(|_| unknown())?;
    while let Some(stripped) = head.strip_suffix('\'') {
        head = stripped;
        primes += 1;
    }
    if head.is_empty() {
        return Err(unknown());
    }
    let variant = match primes {
        0 => Level1Variant::Full,
        1 => Level1Variant::Prime,
        2 => Level1Variant::DoublePrime,
        _ => return Err(unknown()),
    };
    Ok((head, variant, a))
}

macro_rules! by_field {
    ($ctx:expr, $chain:expr, $builder:expr) => {{
        if $ctx.exact {
            Ok(DynOp::Exact($builder($chain, &$ctx.xxx_exact()?)?))
        } else {
            Ok(DynOp::Float($builder($chain, &$ctx.xxx_float()?)?))
        }
    }};
}

/// Build the operator named by `id` (whitespace ignored).
pub fn build_operator(ctx: &BuildCtx, id: &str) -> Result<DynOp> {
    let norm: String = id.chars().filter(|c| !c.is_whitespace()).collect();
    let full = ChainSpec::full(ctx.l);
    let half = ChainSpec::half(ctx.l);
    let full2 = ChainSpec::full_two_row(ctx.l);
    let half2 = ChainSpec::half_two_row(ctx.l);

    // Fixed-name operators first.
    match norm.as_str() {
        "Hxxx" => return by_field!(ctx, full, xxx::h_xxx),
        "H0" => return by_field!(ctx, half, xxx::h_xxx),
        "Hmu" => return by_field!(ctx, half, xxx::h_magnetic),
        "Hk" => return Ok(DynOp::Float(ino::h_kappa(full, &ctx.ino()?)?)),
        "Hk-" => return Ok(DynOp::Float(ino::h_kappa(half, &ctx.ino()?)?)),
        "Hklo" => return Ok(DynOp::Float(ino::h_lo(half, &ctx.ino()?)?)),
        "Mkmu" => return Ok(DynOp::Float(ino::m_mu(half, &ctx.ino()?)?)),
        "Hkmu" => return Ok(DynOp::Float(ino::h_magnetic_kappa(half, &ctx.ino()?)?)),
        "Hk0" => return Ok(DynOp::Float(ino::h_open_kappa(half, &ctx.ino()?)?)),
        "Hoo" => {
            return if ctx.double_ino {
                Ok(DynOp::Float(double_row::h_double_ino(full2, &ctx.ino()?)?))
            } else {
                by_field!(ctx, full2, double_row::h_double_xxx)
            }
        }
        "Hdelta" => {
            return if ctx.double_ino {
                Ok(DynOp::Float(double_row::h_delta_ino(half2, &ctx.ino()?)?))
            } else {
                by_field!(ctx, half2, double_row::h_delta_xxx)
            }
        }
        "Dk" => return Ok(DynOp::Float(double_row::d_kappa(half2, &ctx.ino()?)?)),
        _ => {}
    }

    // Families with a component suffix.
    let (head, variant, a) = split_variant(&norm, id)?;
    match head {
        "E0" => {
            if ctx.exact {
                Ok(DynOp::Exact(xxx::e0(full, a)?))
            } else {
                Ok(DynOp::Float(xxx::e0(full, a)?))
            }
        }
        "E1" => by_field!(ctx, full, |c, p| xxx::e1(c, p, a, variant)),
        "E2" if variant == Level1Variant::Full => by_field!(ctx, full, |c, p| xxx::e2(c, p, a)),
        "E2t" if variant == Level1Variant::Full => {
            by_field!(ctx, full, |c, p| xxx::e2_tilde(c, p, a))
        }
        "X" => by_field!(ctx, half, |c, p| xxx::x(c, p, a, variant)),
        "G" if variant == Level1Variant::Full => by_field!(ctx, half, |c, p| xxx::g(c, p, a)),
        "Ek1" => Ok(DynOp::Float(ino::e1_kappa(full, &ctx.ino()?, a, variant)?)),
        "Ek2" if variant == Level1Variant::Full => {
            Ok(DynOp::Float(ino::e2_kappa(full, &ctx.ino()?, a)?))
        }
        "Ek2t" if variant == Level1Variant::Full => {
            Ok(DynOp::Float(ino::e2_tilde_kappa(full, &ctx.ino()?, a)?))
        }
        "Xk" if variant == Level1Variant::Full => {
            Ok(DynOp::Float(ino::x_kappa(half, &ctx.ino()?, a)?))
        }
        "Gk" if variant == Level1Variant::Full => {
            Ok(DynOp::Float(ino::g_kappa(half, &ctx.ino()?, a)?))
        }
        "A0" | "A1" | "B0" | "B1" if variant == Level1Variant::Full => {
            let level = if head.ends_with('1') { 1 } else { 0 };
            let combo = if head.starts_with('A') {
                Combo::A
            } else {
                Combo::B
            };
            if ctx.double_ino {
                Ok(DynOp::Float(double_row::ab_ino(
                    full2,
                    &ctx.ino()?,
                    a,
                    level,
                    combo,
                )?))
            } else if ctx.exact {
                Ok(DynOp::Exact(double_row::ab_xxx(
                    full2,
                    &ctx.xxx_exact()?,
                    a,
                    level,
                    combo,
                )?))
            } else {
                Ok(DynOp::Float(double_row::ab_xxx(
                    full2,
                    &ctx.xxx_float()?,
                    a,
                    level,
                    combo,
                )?))
            }
        }
        "Y" if variant == Level1Variant::Full => {
            if ctx.double_ino {
                Ok(DynOp::Float(double_row::y_ino(half2, &ctx.ino()?, a)?))
            } else if ctx.exact {
                Ok(DynOp::Exact(double_row::y_xxx(
                    half2,
                    &ctx.xxx_exact()?,
                    a,
                )?))
            } else {
                Ok(DynOp::Float(double_row::y_xxx(
                    half2,
                    &ctx.xxx_float()?,
                    a,
                )?))
            }
        }
        "Yk" if variant == Level1Variant::Full => {
            Ok(DynOp::Float(double_row::y_ino(half2, &ctx.ino()?, a)?))
        }
        _ => Err(Error::UnknownOperator(id.to_string())),
    }
}

/// Parse a `--diff` expression: `[scalar*]<operator-id>`.
pub fn build_expr(ctx: &BuildCtx, expr: &str) -> Result<DynOp> {
    if let Some((scalar, id)) = expr.split_once('*') {
        build_operator(ctx, id)?.scale_rational(scalar)
    } else {
        build_operator(ctx, expr)
    }
}
