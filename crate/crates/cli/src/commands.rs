use serde_json::json;
use spf_core::adjoints::{
    classify_simple_tensor, default_sample, iso_claim, verify_adjoint_theorems, verify_identity_suite,
    verify_monoidality, verify_mullineux, verify_simples, AdjointContext, Expect, Report, Status,
};
use spf_core::combin::{mullineux, partitions, Config, Partition};
use spf_core::modules::{composition_factors, ModAction};
use spf_core::polyfun::{character_multiplicities, eval_sym, ext1, parse_expr, realize, Expr, SimpleTable};
use spf_core::schur::build_schur_algebra;
use spf_core::{Error, Result};

use crate::cache::Cache;
use crate::{Cli, Command, Format, Suite, TableKind};

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. }
        | Error::InvalidPartition(_)
        | Error::WrongClass(..)
        | Error::DegreeMismatch(..) => USAGE,
        _ => FAILURE,
    }
}

pub fn run(cli: &Cli) -> u8 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

struct Env<'a> {
    cli: &'a Cli,
    config: Config,
    cache: Option<Cache>,
}

impl Env<'_> {
    fn n(&self) -> usize {
        self.config.n
    }

    fn context(&self) -> Result<AdjointContext> {
        AdjointContext::new(self.config, self.cli.seed)
    }

    /// A module for an expression, through the cache when one is configured.
    fn module(&self, text: &str, m: usize) -> Result<ModAction> {
        let Config { p, d, .. } = self.config;
        let key = format!("{}", parse_expr(text)?);
        if let Some(c) = &self.cache {
            if let Some(module) = c.load_module(p, m, d, &key) {
                return Ok(module);
            }
        }
        let module = match parse_expr(text)? {
            Expr::Functor(e) => realize(&e, m, d, p)?.module,
            Expr::Sym(s) => eval_sym(&s, d, p, m)?,
        };
        if let Some(c) = &self.cache {
            c.store_module(p, m, d, &key, &module)?;
        }
        Ok(module)
    }

    fn print(&self, value: serde_json::Value, text: String) {
        match self.cli.format {
            Format::Json => println!("{value}"),
            Format::Text => println!("{text}"),
        }
    }

    /// Prints reports in order, writing witnesses to the cache; exit code 1
    /// if any claim is refuted or in discrepancy.
    fn emit(&self, mut reports: Vec<Report>) -> Result<u8> {
        let Config { p, n, d } = self.config;
        let mut code = 0;
        for r in &mut reports {
            if let (Some(c), Some(w)) = (&self.cache, &r.witness) {
                r.witness_file = Some(c.store_witness(&r.id, p, n, d, w)?);
            }
            if r.is_failure() {
                code = FAILURE;
            }
            match self.cli.format {
                Format::Json => println!("{}", r.to_json_line(true)),
                Format::Text => {
                    let detail = r.detail.as_deref().map(|s| format!("  ({s})")).unwrap_or_default();
                    println!(
                        "{:<12} {:<44} [{} {}]  {}{detail}",
                        format!("{:?}", r.status).to_lowercase(),
                        r.id,
                        r.dims[0],
                        r.dims[1],
                        r.anchor
                    );
                }
            }
        }
        Ok(code)
    }
}

fn dispatch(cli: &Cli) -> Result<u8> {
    let n = cli.n.unwrap_or(cli.d);
    let config = Config::new(cli.p, n, cli.d)?;
    let cache = cli.cache_dir.as_deref().map(Cache::open).transpose()?;
    let env = Env { cli, config, cache };
    match &cli.command {
        Command::Info => info(&env),
        Command::Eval { expr, m } => eval(&env, expr, m.unwrap_or(env.n())),
        Command::Iso { lhs, rhs } => {
            let r = iso_claim("iso", &format!("{lhs} ≅ {rhs}"), Expect::Iso, cli.seed, || {
                Ok((env.module(lhs, env.n())?, env.module(rhs, env.n())?))
            });
            if r.status == Status::Inconclusive {
                if let Some(e) = syntax_error(lhs).or_else(|| syntax_error(rhs)) {
                    return Err(e);
                }
            }
            env.emit(vec![r])
        }
        Command::Verify { suite } => verify(&env, *suite),
        Command::Table { kind: TableKind::SimpleTensor } => table(&env),
        Command::Mullineux { lambda } => {
            let m = mullineux(lambda, cli.p as usize)?;
            env.print(
                json!({"lambda": lambda.to_string(), "p": cli.p, "mullineux": m.to_string()}),
                m.to_string(),
            );
            Ok(0)
        }
        Command::Ext { mu, nu } => {
            if mu.degree() != nu.degree() {
                return Err(Error::DegreeMismatch(mu.degree(), nu.degree()));
            }
            let k = ext1(mu, nu, env.n().max(mu.len()).max(nu.len()), cli.p)?;
            env.print(
                json!({"mu": mu.to_string(), "nu": nu.to_string(), "p": cli.p, "ext1": k}),
                format!("dim Ext¹(L{mu}, L{nu}) = {k}"),
            );
            Ok(0)
        }
    }
}

fn syntax_error(text: &str) -> Option<Error> {
    parse_expr(text).err()
}

fn info(env: &Env) -> Result<u8> {
    let Config { p, n, d } = env.config;
    let alg = build_schur_algebra(n, d, p)?;
    let mut cached = false;
    if let Some(c) = &env.cache {
        if c.load_schur(p, n, d).is_some() {
            cached = true;
        } else if let Ok(sc) = alg.structure_constants() {
            c.store_schur(&sc)?;
        }
    }
    let table = SimpleTable::new(n, d, p)?;
    let simples: Vec<(String, usize)> = table
        .simples
        .iter()
        .map(|(l, r, _)| (l.to_string(), r.dim()))
        .collect();
    let restricted = partitions(n, d).iter().filter(|l| l.is_p_restricted(p as usize)).count();
    let text = format!(
        "S({n},{d}) over F_{p}: dim {}\nsimple modules: {}\np-restricted: {restricted}",
        alg.dim(),
        simples.iter().map(|(l, k)| format!("L{l} dim {k}")).collect::<Vec<_>>().join(", ")
    );
    env.print(
        json!({"p": p, "n": n, "d": d, "schur_dim": alg.dim(), "simples": simples,
               "p_restricted": restricted, "cached": cached}),
        text,
    );
    Ok(0)
}

fn eval(env: &Env, text: &str, m: usize) -> Result<u8> {
    let Config { p, d, .. } = env.config;
    let expr = parse_expr(text)?;
    let module = env.module(text, m)?;
    match expr {
        Expr::Functor(e) => {
            let table = SimpleTable::new(m, d, p)?;
            let (ch, mult) = character_multiplicities(&module, &table)?;
            let ch: Vec<(String, usize)> = ch
                .iter()
                .map(|(w, k)| (format!("{w:?}"), *k))
                .collect();
            let factors: Vec<(String, usize)> = mult.iter().map(|(l, k)| (l.to_string(), *k)).collect();
            let shown = factors.iter().map(|(l, k)| format!("L{l}^{k}")).collect::<Vec<_>>().join(" + ");
            env.print(
                json!({"expr": e.to_string(), "p": p, "d": d, "m": m, "dim": module.dim(),
                       "character": ch, "composition_factors": factors}),
                format!("{e} at k^{m}: dim {}, factors {shown}", module.dim()),
            );
        }
        Expr::Sym(s) => {
            let mut dims: Vec<usize> = composition_factors(&module, env.cli.seed)?.iter().map(ModAction::dim).collect();
            dims.sort_unstable();
            env.print(
                json!({"expr": s.to_string(), "p": p, "d": d, "dim": module.dim(), "factor_dims": dims}),
                format!("{s}: dim {}, composition factor dims {dims:?}", module.dim()),
            );
        }
    }
    Ok(0)
}

fn verify(env: &Env, suite: Suite) -> Result<u8> {
    let Config { p, d, .. } = env.config;
    let mut reports = Vec::new();
    let want = |s: Suite| suite == s || suite == Suite::All;
    if want(Suite::Identities) || want(Suite::Adjoints) || want(Suite::Simples) {
        let ctx = env.context()?;
        if want(Suite::Identities) {
            reports.extend(verify_identity_suite(&ctx));
        }
        if want(Suite::Adjoints) {
            reports.extend(verify_adjoint_theorems(&ctx, &default_sample(d)));
            reports.extend(verify_monoidality(&ctx));
        }
        if want(Suite::Simples) {
            reports.extend(verify_simples(&ctx)?);
        }
    }
    if want(Suite::Mullineux) {
        reports.extend(verify_mullineux(p, 5, 8, env.cli.seed));
    }
    env.emit(reports)
}

fn table(env: &Env) -> Result<u8> {
    let ctx = env.context()?;
    let cells = classify_simple_tensor(&ctx)?;
    let mut code = 0;
    for c in &cells {
        if c.reports.iter().any(Report::is_failure) {
            code = FAILURE;
        }
        let identified = c.identified.as_ref().map(Partition::to_string);
        let notes: Vec<String> = c
            .reports
            .iter()
            .filter(|r| r.status != Status::Verified)
            .map(|r| format!("{}: {:?}", r.id, r.status).to_lowercase())
            .collect();
        env.print(
            json!({"lambda": c.lambda.to_string(), "mu": c.mu.to_string(), "dim": c.dim, "simple": c.simple,
                   "identified": identified, "routes": c.routes, "flags": notes}),
            format!(
                "L{} ⊗ L{}: dim {}, {}{}",
                c.lambda,
                c.mu,
                c.dim,
                match &identified {
                    Some(l) => format!("simple ≅ L{l}"),
                    None if c.simple => "simple".into(),
                    None => "not simple".into(),
                },
                if notes.is_empty() { String::new() } else { format!("  [{}]", notes.join("; ")) }
            ),
        );
    }
    Ok(code)
}
