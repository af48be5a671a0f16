//! S-expression syntax for formal expressions.
//!
//! Grammar:
//!   expr := xN                      generator reference
//!         | (int {level} n)        integer constant at a level
//!         | (+ expr expr) | (* expr expr) | (- expr)
//!         | (res {sub} {sup} expr)
//!         | (tr  {sub} {sup} expr)
//!         | (nm  {sub} {sup} expr)
//!         | (conj g expr)
//! Subgroups are written as brace-wrapped element label sets, e.g. {e,r1}.

use std::sync::Arc;

use tambara::free_poly::FormalExpr;
use tambara::groups::FiniteGroup;

use crate::formats::{mask_from_name, mask_name};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(input: &str) -> CliResult<Vec<Token>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut chars = input.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '(' | ')' | ' ' | '\t' | '\n' => {
                if !cur.is_empty() {
                    out.push(Token::Atom(std::mem::take(&mut cur)));
                }
                match c {
                    '(' => out.push(Token::Open),
                    ')' => out.push(Token::Close),
                    _ => {}
                }
            }
            '{' => {
                if !cur.is_empty() {
                    return Err(CliError::Input("unexpected '{'".into()));
                }
                cur.push('{');
                for d in chars.by_ref() {
                    cur.push(d);
                    if d == '}' {
                        break;
                    }
                }
                if !cur.ends_with('}') {
                    return Err(CliError::Input("unterminated subgroup braces".into()));
                }
                out.push(Token::Atom(std::mem::take(&mut cur)));
            }
            _ => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(Token::Atom(cur));
    }
    Ok(out)
}

pub fn parse_expr(group: &Arc<FiniteGroup>, input: &str) -> CliResult<FormalExpr> {
    let tokens = tokenize(input)?;
    let mut pos = 0;
    let expr = parse_at(group, &tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(CliError::Input("trailing tokens after expression".into()));
    }
    Ok(expr)
}

fn parse_at(group: &Arc<FiniteGroup>, tokens: &[Token], pos: &mut usize) -> CliResult<FormalExpr> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| CliError::Input("unexpected end of expression".into()))?;
    *pos += 1;
    match tok {
        Token::Atom(a) => {
            if let Some(idx) = a.strip_prefix('x').and_then(|s| s.parse::<usize>().ok()) {
                Ok(FormalExpr::Gen(idx))
            } else {
                Err(CliError::Input(format!("unknown atom {a}")))
            }
        }
        Token::Close => Err(CliError::Input("unexpected ')'".into())),
        Token::Open => {
            let head = match tokens.get(*pos) {
                Some(Token::Atom(a)) => a.clone(),
                _ => return Err(CliError::Input("expected an operator after '('".into())),
            };
            *pos += 1;
            let expr = match head.as_str() {
                "+" | "*" => {
                    let a = parse_at(group, tokens, pos)?;
                    let b = parse_at(group, tokens, pos)?;
                    if head == "+" {
                        FormalExpr::add(a, b)
                    } else {
                        FormalExpr::mul(a, b)
                    }
                }
                "-" => FormalExpr::neg(parse_at(group, tokens, pos)?),
                "res" | "tr" | "nm" => {
                    let sub = parse_mask(group, tokens, pos)?;
                    let sup = parse_mask(group, tokens, pos)?;
                    let arg = parse_at(group, tokens, pos)?;
                    match head.as_str() {
                        "res" => FormalExpr::res(sub, sup, arg),
                        "tr" => FormalExpr::tr(sub, sup, arg),
                        _ => FormalExpr::nm(sub, sup, arg),
                    }
                }
                "conj" => {
                    let g = match tokens.get(*pos) {
                        Some(Token::Atom(a)) => group
                            .labels()
                            .iter()
                            .position(|l| l == a)
                            .ok_or_else(|| CliError::Input(format!("unknown element {a}")))?,
                        _ => return Err(CliError::Input("conj needs an element label".into())),
                    };
                    *pos += 1;
                    FormalExpr::Conj {
                        g,
                        arg: Box::new(parse_at(group, tokens, pos)?),
                    }
                }
                "int" => {
                    let level = parse_mask(group, tokens, pos)?;
                    let n = match tokens.get(*pos) {
                        Some(Token::Atom(a)) => a
                            .parse::<i64>()
                            .map_err(|_| CliError::Input(format!("bad integer {a}")))?,
                        _ => return Err(CliError::Input("int needs a value".into())),
                    };
                    *pos += 1;
                    FormalExpr::IntConst(level, n)
                }
                other => return Err(CliError::Input(format!("unknown operator {other}"))),
            };
            match tokens.get(*pos) {
                Some(Token::Close) => {
                    *pos += 1;
                    Ok(expr)
                }
                _ => Err(CliError::Input(format!("missing ')' after {head}"))),
            }
        }
    }
}

fn parse_mask(
    group: &Arc<FiniteGroup>,
    tokens: &[Token],
    pos: &mut usize,
) -> CliResult<tambara::groups::Mask> {
    match tokens.get(*pos) {
        Some(Token::Atom(a)) if a.starts_with('{') => {
            *pos += 1;
            mask_from_name(group, a)
        }
        _ => Err(CliError::Input("expected a subgroup in braces".into())),
    }
}

pub fn print_expr(group: &FiniteGroup, e: &FormalExpr) -> String {
    match e {
        FormalExpr::Gen(i) => format!("x{i}"),
        FormalExpr::IntConst(m, n) => format!("(int {} {n})", mask_name(group, *m)),
        FormalExpr::Const(m, v) => format!("(const {} {v})", mask_name(group, *m)),
        FormalExpr::Add(a, b) => {
            format!("(+ {} {})", print_expr(group, a), print_expr(group, b))
        }
        FormalExpr::Mul(a, b) => {
            format!("(* {} {})", print_expr(group, a), print_expr(group, b))
        }
        FormalExpr::Neg(a) => format!("(- {})", print_expr(group, a)),
        FormalExpr::Res { sub, sup, arg } => format!(
            "(res {} {} {})",
            mask_name(group, *sub),
            mask_name(group, *sup),
            print_expr(group, arg)
        ),
        FormalExpr::Tr { sub, sup, arg } => format!(
            "(tr {} {} {})",
            mask_name(group, *sub),
            mask_name(group, *sup),
            print_expr(group, arg)
        ),
        FormalExpr::Nm { sub, sup, arg } => format!(
            "(nm {} {} {})",
            mask_name(group, *sub),
            mask_name(group, *sup),
            print_expr(group, arg)
        ),
        FormalExpr::Conj { g, arg } => {
            format!("(conj {} {})", group.label(*g), print_expr(group, arg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let src = "(nm {r0} {r0,r1} (res {r0} {r0,r1} x0))";
        let e = parse_expr(&g, src).unwrap();
        assert_eq!(print_expr(&g, &e), src);
    }

    #[test]
    fn rejects_garbage() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        assert!(parse_expr(&g, "(frobnicate x0)").is_err());
        assert!(parse_expr(&g, "(+ x0").is_err());
        assert!(parse_expr(&g, "x0 x1").is_err());
    }
}
