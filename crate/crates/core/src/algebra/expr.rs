//! Component expressions: parsing text such as `(sqrt5-1)/2` or `-w2` into
//! field elements, and printing field elements back in the same grammar.
//!
//! Grammar: rational and decimal literals, `i`, `w` (omega = exp(2 pi i/3)),
//! `w2` (omega squared), `sqrt2`, `sqrt3`, `sqrt5`, `z` (the field's own
//! primitive root), unary minus, `+ - * /`, integer powers `^`, parentheses.
//! A number directly followed by a symbol multiplies (`2i`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{CycloRational, Field};
use super::AlgebraError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigRational),
    Ident(String),
    Op(char),
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Token>, AlgebraError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Num(parse_decimal(&text)?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push(Token::Ident(if word == "ω" { "w".into() } else { word }));
        } else if "+-*/^".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            out.push(Token::Close);
            i += 1;
        } else {
            return Err(AlgebraError::Syntax(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

fn parse_decimal(text: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::Syntax(format!("malformed number {text:?}"));
    let (int_part, frac_part) = match text.split_once('.') {
        Some((a, b)) => (a, b),
        None => (text, ""),
    };
    if frac_part.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { return Err(bad()) } else { digits.parse().map_err(|_| bad())? };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok(BigRational::new(num, den))
}

struct Parser<'a> {
    field: &'a Field,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<CycloRational, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycloRational, AlgebraError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.factor()?)?;
                }
                Some(Token::Num(_) | Token::Ident(_) | Token::Open) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CycloRational, AlgebraError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CycloRational, AlgebraError> {
        let base = self.primary()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let negative = matches!(self.peek(), Some(Token::Op('-')));
            if negative {
                self.pos += 1;
            }
            let exp = match self.next() {
                Some(Token::Num(q)) if q.is_integer() => q.to_integer(),
                other => return Err(AlgebraError::Syntax(format!("expected integer exponent, got {other:?}"))),
            };
            let exp: i64 = exp.try_into().map_err(|_| AlgebraError::Syntax("exponent too large".into()))?;
            return base.pow(if negative { -exp } else { exp });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<CycloRational, AlgebraError> {
        match self.next() {
            Some(Token::Num(q)) => Ok(self.field.rational(q)),
            Some(Token::Open) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(v),
                    other => Err(AlgebraError::Syntax(format!("expected ')', got {other:?}"))),
                }
            }
            Some(Token::Ident(name)) => self.symbol(&name),
            other => Err(AlgebraError::Syntax(format!("unexpected token {other:?}"))),
        }
    }

    fn symbol(&self, name: &str) -> Result<CycloRational, AlgebraError> {
        let f = self.field;
        let need = |root: u32| -> Result<(), AlgebraError> {
            if f.order().is_multiple_of(root) {
                Ok(())
            } else {
                Err(AlgebraError::OutsideField {
                    value: name.to_string(),
                    required_order: num_integer::lcm(f.order(), root),
                })
            }
        };
        match name {
            "i" => f.root_of_unity(4).map_err(|_| outside(name, f, 4)),
            "w" => f.root_of_unity(3).map_err(|_| outside(name, f, 3)),
            "w2" => Ok(f.root_of_unity(3).map_err(|_| outside(name, f, 3))?.pow(2)?),
            "z" => Ok(f.zeta_pow(1)),
            "sqrt5" => {
                need(5)?;
                let z5 = f.root_of_unity(5)?;
                let s = &z5 + &z5.pow(4)?;
                Ok(&(&f.integer(2) * &s) + &f.one())
            }
            "sqrt3" => {
                need(12)?;
                let z12 = f.root_of_unity(12)?;
                Ok(&z12 + &z12.conj())
            }
            "sqrt2" => {
                need(8)?;
                let z8 = f.root_of_unity(8)?;
                Ok(&z8 + &z8.conj())
            }
            "exp" | "sin" | "cos" | "tan" | "log" | "pi" | "e" | "sqrt" => {
                Err(AlgebraError::Unsupported(name.to_string()))
            }
            _ => Err(AlgebraError::Syntax(format!("unknown symbol {name:?}"))),
        }
    }
}

fn outside(name: &str, f: &Field, root: u32) -> AlgebraError {
    AlgebraError::OutsideField { value: name.to_string(), required_order: num_integer::lcm(f.order(), root) }
}

/// Parse one component expression in the given field.
pub fn parse_component_in(field: &Field, expr: &str) -> Result<CycloRational, AlgebraError> {
    let tokens = tokenize(expr)?;
    if tokens.is_empty() {
        return Err(AlgebraError::Syntax("empty expression".into()));
    }
    let mut p = Parser { field, tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(AlgebraError::Syntax(format!("trailing input in {expr:?}")));
    }
    Ok(v)
}

/// Parse in the default field Q(zeta_60).
pub fn parse_component(expr: &str) -> Result<CycloRational, AlgebraError> {
    parse_component_in(&Field::default_field(), expr)
}

/// Split a comma-separated list of expressions, respecting parentheses.
pub fn split_list(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in list.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(list[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let tail = list[start..].trim();
    if !tail.is_empty() || !out.is_empty() {
        out.push(tail);
    }
    out
}

/// Parse a comma-separated list such as `0,1,-1,i,-i`.
pub fn parse_component_list(field: &Field, list: &str) -> Result<Vec<CycloRational>, AlgebraError> {
    split_list(list).into_iter().map(|e| parse_component_in(field, e)).collect()
}

fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Solve `sum_b x_b * basis_b = target` over Q; `None` if inconsistent.
fn solve_in_basis(basis: &[CycloRational], target: &CycloRational) -> Option<Vec<BigRational>> {
    let d = target.coeffs().len();
    let nb = basis.len();
    let mut rows: Vec<Vec<BigRational>> = (0..d)
        .map(|r| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b.coeffs()[r].clone()).collect();
            row.push(target.coeffs()[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nb {
        let Some(p) = (r..d).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[nb].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); nb];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][nb].clone();
    }
    Some(sol)
}

fn join_terms(terms: &[(BigRational, &str)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let common_den = terms.iter().fold(BigInt::one(), |acc, (q, _)| num_integer::Integer::lcm(&acc, q.denom()));
    let render = |terms: &[(BigRational, &str)], scale: &BigInt| -> String {
        let mut s = String::new();
        for (idx, (q, mono)) in terms.iter().enumerate() {
            let q = q * BigRational::from_integer(scale.clone());
            let neg = q.is_negative();
            let a = q.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            if mono.is_empty() {
                s.push_str(&format_rational(&a));
            } else if a.is_one() {
                s.push_str(mono);
            } else {
                s.push_str(&format_rational(&a));
                s.push('*');
                s.push_str(mono);
            }
        }
        s
    };
    if terms.len() > 1 && !common_den.is_one() {
        format!("({})/{}", render(terms, &common_den), common_den)
    } else {
        render(terms, &BigInt::one())
    }
}

/// Render a field element in the component grammar so that
/// `parse_component_in(field, &format_component(x)) == x`.
pub fn format_component(x: &CycloRational) -> String {
    let f = x.field().clone();
    if let Some(q) = x.as_rational() {
        return format_rational(q);
    }
    let n = f.order();
    // rational multiples of small roots of unity
    let mut units: Vec<(&str, CycloRational)> = Vec::new();
    if n.is_multiple_of(4) {
        units.push(("i", f.root_of_unity(4).unwrap()));
    }
    if n.is_multiple_of(3) {
        let w = f.root_of_unity(3).unwrap();
        units.push(("w2", w.pow(2).unwrap()));
        units.push(("w", w.clone()));
        if n.is_multiple_of(4) {
            let i = f.root_of_unity(4).unwrap();
            units.push(("i*w", &i * &w));
            units.push(("i*w2", &i * &w.pow(2).unwrap()));
        }
    }
    for (name, u) in &units {
        let r = x * &u.conj();
        if let Some(q) = r.as_rational() {
            return join_terms(&[(q.clone(), name)]);
        }
    }
    if n.is_multiple_of(60) {
        let one = f.one();
        let i = f.root_of_unity(4).unwrap();
        let w = f.root_of_unity(3).unwrap();
        let s5 = parse_component_in(&f, "sqrt5").unwrap();
        let names = ["", "i", "w", "i*w", "sqrt5", "i*sqrt5", "w*sqrt5", "i*w*sqrt5"];
        let basis = [
            one.clone(),
            i.clone(),
            w.clone(),
            &i * &w,
            s5.clone(),
            &i * &s5,
            &w * &s5,
            &(&i * &w) * &s5,
        ];
        if let Some(sol) = solve_in_basis(&basis, x) {
            let terms: Vec<(BigRational, &str)> =
                sol.into_iter().zip(names).filter(|(q, _)| !q.is_zero()).collect();
            return join_terms(&terms);
        }
    }
    let powers: Vec<String> = (0..f.degree()).map(|j| if j == 1 { "z".into() } else { format!("z^{j}") }).collect();
    let terms: Vec<(BigRational, &str)> = x
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(j, q)| (q.clone(), if j == 0 { "" } else { powers[j].as_str() }))
        .collect();
    join_terms(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> CycloRational {
        parse_component(s).unwrap()
    }

    #[test]
    fn omega_is_a_primitive_cube_root() {
        let w = p("w");
        assert!(w.pow(3).unwrap().is_one());
        assert!((&(&p("1") + &w) + &p("w2")).is_zero());
        assert_eq!(p("w^2"), p("w2"));
        assert_eq!(p("w"), p("(-1+i*sqrt3)/2"));
    }

    #[test]
    fn zero_literal_is_additive_identity() {
        assert!(p("0").is_zero());
        assert_eq!(&p("0") + &p("i"), p("i"));
    }

    #[test]
    fn golden_conjugate_solves_its_quadratic() {
        let x = p("(sqrt5-1)/2");
        let v = &(&(&x * &x) + &x) - &p("1");
        assert!(v.is_zero());
        assert_eq!(&p("sqrt5") * &p("sqrt5"), p("5"));
    }

    #[test]
    fn decimals_and_implicit_products() {
        assert_eq!(p("0.5"), p("1/2"));
        assert_eq!(p("2i"), p("2*i"));
        assert_eq!(p("-2"), -&p("2"));
        assert_eq!(p("i^-1"), p("-i"));
    }

    #[test]
    fn errors_are_classified() {
        assert!(matches!(parse_component("1/0"), Err(AlgebraError::DivisionByZero)));
        assert!(matches!(parse_component("1+"), Err(AlgebraError::Syntax(_))));
        assert!(matches!(parse_component("(1"), Err(AlgebraError::Syntax(_))));
        assert!(matches!(parse_component("exp(1)"), Err(AlgebraError::Unsupported(_))));
        assert!(matches!(
            parse_component("sqrt2"),
            Err(AlgebraError::OutsideField { required_order: 120, .. })
        ));
        let f12 = Field::new(12);
        assert!(matches!(parse_component_in(&f12, "sqrt5"), Err(AlgebraError::OutsideField { .. })));
    }

    #[test]
    fn formatting_round_trips() {
        for s in ["0", "-1", "3/2", "i", "-i", "w", "w2", "-w2", "i*w", "(sqrt5-1)/2", "(1+sqrt5)/2", "2+3i", "z", "1/3*z^5"] {
            let x = p(s);
            let text = format_component(&x);
            assert_eq!(p(&text), x, "{s} -> {text}");
        }
        assert_eq!(format_component(&p("(sqrt5-1)/2")), "(-1+sqrt5)/2");
        assert_eq!(format_component(&p("-w")), "-w");
    }

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(split_list("0, (1,2), -i"), vec!["0", "(1,2)", "-i"]);
        assert!(split_list("").is_empty());
    }
}
