//! Line-oriented presentation files.
//!
//! ```text
//! prime 3
//! gen alpha stem=3 filt=1 order=3
//! gen Delta stem=24 filt=0 order=inf invertible
//! rel alpha^2 -> 0
//! rel c6^2 -> c4^3 - 1728 Delta
//! d 5 Delta -> alpha beta^2
//! d 7 4*Delta -> kbar eta^3 transfer=quarter
//! ```
//!
//! `#` starts a comment. A relation `c*M -> 0` with `c > 1` is a torsion
//! relation; otherwise the left side must be a bare monomial.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{AnssError, E2Class, E2Presentation, Generator, Mono, Rule, Seed, Transfer};
use crate::expr;

const DEFAULT_STEM_BOUND: i64 = 600;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> AnssError {
    AnssError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
        .map(|(i, t)| (text[..i].chars().count() + 1, t))
        .collect()
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub(super) fn parse_presentation(text: &str) -> Result<E2Presentation, AnssError> {
    let mut pres = E2Presentation {
        prime: 0,
        generators: Vec::new(),
        rules: Vec::new(),
        seeds: Vec::new(),
        stem_bound: DEFAULT_STEM_BOUND,
    };
    // Generators first, so relations may mention any of them.
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let toks = tokens(line);
        match toks.first().map(|t| t.1) {
            Some("prime") => pres.prime = parse_prime(n + 1, &toks)?,
            Some("gen") => {
                let g = parse_generator(n + 1, &toks)?;
                if pres.generator_index(&g.name).is_some() {
                    return Err(syntax(n + 1, toks[1].0, format!("duplicate generator `{}`", g.name)));
                }
                pres.generators.push(g);
            }
            Some("rel") | Some("d") | None => {}
            Some(other) => return Err(syntax(n + 1, toks[0].0, format!("unknown directive `{other}`"))),
        }
    }
    if pres.prime == 0 {
        return Err(AnssError::MissingPrime);
    }
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let toks = tokens(line);
        match toks.first().map(|t| t.1) {
            Some("rel") => {
                let rule = parse_rule(&pres, n + 1, line, toks[0].0 + 3)?;
                pres.rules.push(rule);
            }
            Some("d") => {
                let seed = parse_seed(&pres, n + 1, line, &toks)?;
                pres.seeds.push(seed);
            }
            _ => {}
        }
    }
    pres.seeds.sort_by_key(|s| s.page);
    Ok(pres)
}

fn parse_prime(line: usize, toks: &[(usize, &str)]) -> Result<u32, AnssError> {
    match toks {
        [_, (col, p)] => p
            .parse::<u32>()
            .ok()
            .filter(|&p| p >= 2)
            .ok_or_else(|| syntax(line, *col, format!("bad prime `{p}`"))),
        _ => Err(syntax(line, 1, "expected `prime N`")),
    }
}

fn parse_generator(line: usize, toks: &[(usize, &str)]) -> Result<Generator, AnssError> {
    let (name_col, name) = *toks.get(1).ok_or_else(|| syntax(line, 1, "expected a generator name"))?;
    if !name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        || !name.chars().all(|c| c.is_alphanumeric() || c == '_')
    {
        return Err(syntax(line, name_col, format!("bad generator name `{name}`")));
    }
    let (mut stem, mut filt, mut order, mut invertible) = (None, None, None, false);
    for &(col, tok) in &toks[2..] {
        if tok == "invertible" {
            invertible = true;
            continue;
        }
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| syntax(line, col, format!("expected key=value, found `{tok}`")))?;
        let int = |v: &str| {
            v.parse::<i64>()
                .map_err(|_| syntax(line, col + key.len() + 1, format!("bad integer `{v}`")))
        };
        match key {
            "stem" => stem = Some(int(value)?),
            "filt" => filt = Some(int(value)?),
            "order" => {
                order = Some(match value {
                    "inf" => None,
                    v => match v.parse::<u64>() {
                        Ok(o) if o >= 1 => Some(o),
                        _ => return Err(syntax(line, col + key.len() + 1, format!("bad order `{v}`"))),
                    },
                })
            }
            _ => return Err(syntax(line, col, format!("unknown key `{key}`"))),
        }
    }
    let missing = |what: &str| syntax(line, name_col, format!("generator `{name}` lacks {what}"));
    Ok(Generator {
        name: name.to_string(),
        stem: stem.ok_or_else(|| missing("stem="))?,
        filtration: filt.ok_or_else(|| missing("filt="))?,
        order: order.ok_or_else(|| missing("order="))?,
        invertible,
    })
}

/// A slice of a line with its 0-based column offset.
type Span<'a> = (&'a str, usize);

/// Splits `lhs -> rhs` into two spans.
fn split_arrow(line: usize, text: &str, offset: usize) -> Result<(Span<'_>, Span<'_>), AnssError> {
    let i = text
        .find("->")
        .ok_or_else(|| syntax(line, offset + 1, "expected `->`"))?;
    let lhs = &text[..i];
    let rhs = &text[i + 2..];
    let rhs_col = offset + text[..i + 2].chars().count();
    Ok(((lhs, offset), (rhs, rhs_col)))
}

fn parse_side(
    pres: &E2Presentation,
    line: usize,
    (text, col): Span<'_>,
) -> Result<E2Class, AnssError> {
    let terms = expr::parse_polynomial_at(text, line, col)?;
    pres.class_from_terms(terms, line)
}

fn single_term(
    pres: &E2Presentation,
    line: usize,
    side: Span<'_>,
) -> Result<(BigInt, Mono), AnssError> {
    let x = parse_side(pres, line, side)?;
    let mut it = x.terms.into_iter();
    match (it.next(), it.next()) {
        (Some((m, c)), None) if c.is_positive() => Ok((c, m)),
        _ => Err(syntax(line, side.1 + 1, "left side must be a single positive term")),
    }
}

fn parse_rule(pres: &E2Presentation, line: usize, text: &str, body_col: usize) -> Result<Rule, AnssError> {
    let body = &text[text.char_indices().nth(body_col - 1).map_or(text.len(), |(i, _)| i)..];
    let (lhs_text, rhs_text) = split_arrow(line, body, body_col - 1)?;
    let (c, lhs) = single_term(pres, line, lhs_text)?;
    let rhs = parse_side(pres, line, rhs_text)?;
    if rhs.is_zero() && !c.is_one() {
        return Ok(Rule::Torsion {
            coefficient: c,
            monomial: lhs,
        });
    }
    if !c.is_one() {
        return Err(syntax(line, lhs_text.1 + 1, "a rewrite rule needs a bare monomial on the left"));
    }
    let lb = pres.bidegree(&lhs);
    for m in rhs.terms.keys() {
        let rb = pres.bidegree(m);
        if rb != lb {
            return Err(AnssError::InhomogeneousRule { line, lhs: lb, rhs: rb });
        }
        if pres.order_key(m) >= pres.order_key(&lhs) {
            return Err(AnssError::NonTerminating { line });
        }
    }
    if rhs.is_zero() && pres.order_key(&lhs).iter().all(|&e| e == 0) {
        return Err(AnssError::NonTerminating { line });
    }
    Ok(Rule::Rewrite { lhs, rhs })
}

fn parse_seed(
    pres: &E2Presentation,
    line: usize,
    text: &str,
    toks: &[(usize, &str)],
) -> Result<Seed, AnssError> {
    let bad = |message: String| AnssError::BadSeed { line, message };
    let (page_col, page) = *toks.get(1).ok_or_else(|| syntax(line, 1, "expected a page number"))?;
    let page: u32 = page
        .parse()
        .ok()
        .filter(|&r| r >= 2)
        .ok_or_else(|| syntax(line, page_col, format!("bad page `{page}`")))?;
    let body_start = page_col - 1 + toks[1].1.chars().count();
    let mut body_end = text.chars().count();
    let mut transfer = Transfer::Leibniz;
    if let Some(&(col, last)) = toks.last() {
        if let Some(kind) = last.strip_prefix("transfer=") {
            transfer = match kind {
                "quarter" => Transfer::Quarter,
                "leibniz" => Transfer::Leibniz,
                _ => return Err(syntax(line, col + 9, format!("unknown transfer rule `{kind}`"))),
            };
            body_end = col - 1;
        }
    }
    let chars: Vec<char> = text.chars().collect();
    let body: String = chars[body_start..body_end].iter().collect();
    let (src, tgt) = split_arrow(line, &body, body_start)?;
    let (c, m) = single_term(pres, line, src)?;
    let gens: Vec<usize> = (0..m.len()).filter(|&i| m[i] != 0).collect();
    let g = match gens.as_slice() {
        [g] if m[*g] == 1 => *g,
        _ => return Err(bad("source must be a multiple of a single generator".into())),
    };
    let expected = match transfer {
        Transfer::Leibniz => BigInt::one(),
        Transfer::Quarter => BigInt::from(4),
    };
    if c != expected {
        return Err(bad(format!("source coefficient {c} does not match the transfer rule")));
    }
    let target = parse_side(pres, line, tgt)?;
    if target.is_zero() {
        return Err(bad("target is zero".into()));
    }
    let gen = &pres.generators[g];
    let want = (gen.stem - 1, gen.filtration + page as i64);
    for t in target.terms.keys() {
        let b = pres.bidegree(t);
        if b != want {
            return Err(bad(format!("target has bidegree {b:?}, expected {want:?}")));
        }
    }
    Ok(Seed {
        page,
        generator: g,
        coefficient: c,
        target,
        transfer,
    })
}
