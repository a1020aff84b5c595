//! `K(x, y)` and `F(x*w, v)` expressions over named monomials.

use ocformal::formality::{KTaylor, OcMorphism};
use ocformal::graded::{int, Element, ElementRepr, GradedSpace, Letter};
use ocformal::linfty::apply_taylor;

use crate::instance::Resolved;
use crate::CliError;

pub struct EvalOutput {
    pub display: String,
    pub repr: ElementRepr,
}

/// Split `K(a, b*c)` into the head and its arguments, each a list of
/// factor names.
fn parse(expr: &str) -> Result<(char, Vec<Vec<String>>), CliError> {
    let bad = || {
        CliError::Input(format!(
            "cannot parse `{expr}`; expected K(x, ...) or F(x*w, ...)"
        ))
    };
    let e = expr.trim();
    let head = e.chars().next().ok_or_else(bad)?;
    if head != 'K' && head != 'F' {
        return Err(bad());
    }
    let body = e[1..]
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let args: Vec<Vec<String>> = body
        .split(',')
        .map(|a| a.split('*').map(|f| f.trim().to_string()).collect())
        .collect();
    if args.iter().flatten().any(|f| f.is_empty()) {
        return Err(bad());
    }
    Ok((head, args))
}

/// Product of named monomials, each pushed through `embed` into `target`.
fn product(
    inst: &Resolved,
    factors: &[String],
    target: &GradedSpace,
    embed: &dyn Fn(&str, Letter) -> Result<Letter, CliError>,
) -> Result<(Element, usize, u32), CliError> {
    let mut letters = Vec::new();
    let mut gamma = 0;
    for name in factors {
        let (space, m) = inst.monomial(name)?;
        for &l in m.word.letters() {
            letters.push(embed(&space, l)?);
        }
        gamma += m.gamma;
    }
    let len = letters.len();
    Ok((
        Element::from_letters(&letters, gamma, int(1), target),
        len,
        gamma,
    ))
}

fn check_window(inst: &Resolved, letters: usize, gamma: u32) -> Result<(), CliError> {
    let w = inst.window;
    if letters > w.max_word || gamma > w.max_gamma {
        return Err(CliError::Input(format!(
            "window overflow: inputs carry {letters} letters and γ^{gamma}, window allows {} letters and γ^{}",
            w.max_word, w.max_gamma
        )));
    }
    Ok(())
}

pub fn run(
    inst: &Resolved,
    kernel: &str,
    open: Option<&str>,
    expr: &str,
) -> Result<EvalOutput, CliError> {
    let (head, args) = parse(expr)?;
    let h = inst.kernel(kernel)?;
    let closed_name = inst.file.kernels[kernel].space.clone();
    let (mut letters, mut gamma) = (0, 0);
    let finish = |value: Element, space: &GradedSpace| EvalOutput {
        display: value.display(space).to_string(),
        repr: value.to_repr(space),
    };
    if head == 'K' {
        let space = h.space().clone();
        let embed = |s: &str, l: Letter| {
            if s == closed_name {
                Ok(l)
            } else {
                Err(CliError::Input(format!(
                    "K takes monomials over `{closed_name}`, found one over `{s}`"
                )))
            }
        };
        let mut xs = Vec::new();
        for a in &args {
            let (x, n, g) = product(inst, a, &space, &embed)?;
            letters += n;
            gamma += g;
            xs.push(x);
        }
        check_window(inst, letters, gamma)?;
        let value = apply_taylor(&KTaylor::new(h), &xs);
        return Ok(finish(value, &space));
    }
    let open_name = open.ok_or_else(|| CliError::Input("F(...) needs --open".into()))?;
    let w = inst.presentation(open_name)?;
    let f = OcMorphism::new(h, w.space()).map_err(|e| CliError::Input(e.to_string()))?;
    let embed = |s: &str, l: Letter| {
        if s == closed_name {
            Ok(f.emb_closed()[l.0 as usize])
        } else if inst.space(s)? == w.space() {
            Ok(f.emb_open()[l.0 as usize])
        } else {
            Err(CliError::Input(format!(
                "monomial space `{s}` is neither the kernel's nor the open sector's"
            )))
        }
    };
    let mut xs = Vec::new();
    for a in &args {
        let (x, n, g) = product(inst, a, f.union(), &embed)?;
        letters += n;
        gamma += g;
        xs.push(x);
    }
    check_window(inst, letters, gamma)?;
    let value = apply_taylor(&f, &xs);
    Ok(finish(value, f.union()))
}
