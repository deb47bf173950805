//! Parser for hyperelliptic equations written as `y^2 + h(x) y = f(x)`.
//!
//! The grammar is deliberately small: terms are signed monomials in x and y,
//! `*` and whitespace are ignored, exponents use `^`.  The equation is
//! normalized by moving every term to the left hand side; the `y^2` term must
//! survive with coefficient exactly one.

use nazeta_core::{Error, Result};

/// Parses an equation into the coefficient tables `(h, f)`, ascending degree.
pub fn parse_hyperelliptic(text: &str) -> Result<(Vec<i64>, Vec<i64>)> {
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    let (lhs, rhs) = cleaned
        .split_once('=')
        .ok_or_else(|| Error::Input(format!("equation {text:?} has no '='")))?;
    if lhs.is_empty() || rhs.is_empty() {
        return Err(Error::Input(format!("equation {text:?} has an empty side")));
    }

    let mut y_square = 0i64;
    let mut h: Vec<i64> = Vec::new();
    let mut f: Vec<i64> = Vec::new();
    for (side, side_sign) in [(lhs, 1i64), (rhs, -1i64)] {
        for term in split_terms(side) {
            let (coeff, x_pow, y_pow) = parse_term(&term)?;
            let moved = side_sign * coeff;
            match y_pow {
                2 if x_pow == 0 => y_square += moved,
                2 => {
                    return Err(Error::Input(format!(
                        "term {term:?} mixes y^2 with x; the model must be monic in y^2"
                    )))
                }
                1 => add_at(&mut h, x_pow, moved),
                // f collects the x-only terms of the right hand side.
                0 => add_at(&mut f, x_pow, -moved),
                _ => {
                    return Err(Error::Input(format!(
                        "term {term:?} has y degree above 2"
                    )))
                }
            }
        }
    }
    if y_square != 1 {
        return Err(Error::Input(format!(
            "equation {text:?} needs a y^2 term with coefficient 1, found {y_square}"
        )));
    }
    trim(&mut h);
    trim(&mut f);
    Ok((h, f))
}

fn split_terms(side: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut current = String::new();
    for (i, c) in side.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(std::mem::take(&mut current));
        }
        current.push(c);
    }
    terms.push(current);
    terms
}

fn parse_term(term: &str) -> Result<(i64, usize, u32)> {
    let bad = |why: &str| Error::Input(format!("cannot read term {term:?}: {why}"));
    let mut chars = term.chars().peekable();
    let mut sign = 1i64;
    match chars.peek() {
        Some('-') => {
            sign = -1;
            chars.next();
        }
        Some('+') => {
            chars.next();
        }
        _ => {}
    }

    let digits = take_digits(&mut chars);
    let mut coeff = match &digits {
        Some(text) => text.parse::<i64>().map_err(|_| bad("coefficient overflows"))?,
        None => 1,
    };
    coeff *= sign;

    let mut x_pow = 0usize;
    let mut y_pow = 0u32;
    while let Some(&c) = chars.peek() {
        let variable = match c {
            'x' | 'X' => 'x',
            'y' | 'Y' => 'y',
            _ => return Err(bad("expected x or y")),
        };
        chars.next();
        let exponent = if chars.peek() == Some(&'^') {
            chars.next();
            let text = take_digits(&mut chars).ok_or_else(|| bad("'^' needs digits"))?;
            text.parse::<u32>().map_err(|_| bad("exponent overflows"))?
        } else {
            1
        };
        if variable == 'x' {
            x_pow += exponent as usize;
        } else {
            y_pow += exponent;
        }
    }
    if digits.is_none() && x_pow == 0 && y_pow == 0 {
        return Err(bad("empty term"));
    }
    Ok((coeff, x_pow, y_pow))
}

fn take_digits(chars: &mut std::iter::Peekable<std::str::Chars>) -> Option<String> {
    let mut text = String::new();
    while let Some(c) = chars.peek() {
        if c.is_ascii_digit() {
            text.push(*c);
            chars.next();
        } else {
            break;
        }
    }
    if text.is_empty() {
        None
    } else {
        Some(text)
    }
}

fn add_at(coeffs: &mut Vec<i64>, power: usize, value: i64) {
    if coeffs.len() <= power {
        coeffs.resize(power + 1, 0);
    }
    coeffs[power] += value;
}

fn trim(coeffs: &mut Vec<i64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}
