//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every entry point takes plain strings and numbers and returns a JSON
//! string, so the page needs no generated type glue beyond `wasm-bindgen`.

use serde_json::{json, Value};
use spf_core::combin::{mullineux, Partition};
use spf_core::modules::{is_isomorphic, IsoOutcome};
use spf_core::polyfun::{character_multiplicities, parse_expr, realize, Expr, SimpleTable};
use spf_core::Result;
use wasm_bindgen::prelude::*;

/// Evaluation is capped to keep the page responsive.
pub const MAX_DIM: usize = 4;

fn guard(p: u32, d: usize) -> Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(spf_core::Error::SizeGuard(format!("degree must be between 1 and {MAX_DIM}")));
    }
    spf_core::combin::Config::new(p, d, d).map(|_| ())
}

fn functor(text: &str, p: u32, d: usize) -> Result<spf_core::modules::ModAction> {
    match parse_expr(text)? {
        Expr::Functor(e) => Ok(realize(&e, d, d, p)?.module),
        Expr::Sym(s) => spf_core::polyfun::eval_sym(&s, d, p, d),
    }
}

fn render(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Dimension and composition factors of a functor evaluated at k^d.
pub fn eval_json(expr: &str, p: u32, d: usize) -> String {
    render((|| {
        guard(p, d)?;
        let module = functor(expr, p, d)?;
        let factors = match parse_expr(expr)? {
            Expr::Functor(_) => {
                let table = SimpleTable::new(d, d, p)?;
                let (_, mult) = character_multiplicities(&module, &table)?;
                mult.iter().map(|(l, k)| json!([format!("L{l}"), k])).collect()
            }
            Expr::Sym(_) => Vec::new(),
        };
        Ok(json!({ "dim": module.dim(), "factors": factors }))
    })())
}

/// Decides whether two expressions give isomorphic modules.
pub fn iso_json(lhs: &str, rhs: &str, p: u32, d: usize) -> String {
    render((|| {
        guard(p, d)?;
        parse_expr(lhs)?;
        parse_expr(rhs)?;
        let (x, y) = (functor(lhs, p, d)?, functor(rhs, p, d)?);
        let dims = [x.dim(), y.dim()];
        Ok(match is_isomorphic(&x, &y, 0)? {
            IsoOutcome::Isomorphic(_) => json!({ "status": "verified", "dims": dims }),
            IsoOutcome::NotIsomorphic(why) => json!({ "status": "refuted", "dims": dims, "detail": why }),
            IsoOutcome::Inconclusive(why) => json!({ "status": "inconclusive", "dims": dims, "detail": why }),
        })
    })())
}

/// The Mullineux image of a p-regular partition written as "3,2,1".
pub fn mullineux_json(lambda: &str, p: u32) -> String {
    render((|| {
        let parts = lambda
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| spf_core::Error::InvalidPartition(lambda.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let lambda = Partition::new(parts)?;
        Ok(json!({ "lambda": lambda.to_string(), "image": mullineux(&lambda, p as usize)?.to_string() }))
    })())
}

#[wasm_bindgen]
pub fn evaluate(expr: &str, p: u32, d: usize) -> String {
    eval_json(expr, p, d)
}

#[wasm_bindgen]
pub fn iso(lhs: &str, rhs: &str, p: u32, d: usize) -> String {
    iso_json(lhs, rhs, p, d)
}

#[wasm_bindgen(js_name = mullineux)]
pub fn mullineux_image(lambda: &str, p: u32) -> String {
    mullineux_json(lambda, p)
}
