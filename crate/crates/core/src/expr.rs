//! Text syntax for operator-ring, module and operated-module elements.
//!
//! ```text
//! expr := term (('+' | '-') term)*
//! term := (rational '*')? word
//! ```
//! Operator words are written `e1 Q[1] e2 Q[2] e1`; an omitted slot next to
//! a `Q[...]` letter stands for the unit. Module words append `: x`.
//! Operated words separate slots with dots, `e1 . 1 . e2 : x`. A word may
//! be wrapped in parentheses.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::MrbAlgebraInstance;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::opring::{expand, FreeModuleElement, ModuleWord, OpElement, OpWord};
use crate::operated::{GeneratorSet, OperatedElement, OperatedWord};
use crate::scalar::{format_rational, parse_rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordAst {
    /// Slots may be omitted (`None`) next to operator letters.
    Op {
        slots: Vec<Option<String>>,
        ops: Vec<String>,
        generator: Option<String>,
    },
    Operated {
        slots: Vec<String>,
        ops: Vec<String>,
        generator: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    pub word: WordAst,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpressionAst {
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Label(String),
    Slash,
    Star,
    Plus,
    Minus,
    LParen,
    RParen,
    Dot,
    Colon,
    Q(String),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_label_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let single = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '/' => Some(Tok::Slash),
            '*' => Some(Tok::Star),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '.' => Some(Tok::Dot),
            ':' => Some(Tok::Colon),
            'Q' if chars.get(i + 1) == Some(&'[') => {
                let mut j = i + 2;
                col += 2;
                let mut label = String::new();
                while j < chars.len() && is_label_char(chars[j]) {
                    label.push(chars[j]);
                    j += 1;
                    col += 1;
                }
                if j >= chars.len() {
                    return Err(syntax(line, col, "unterminated operator letter"));
                }
                if chars[j] != ']' {
                    return Err(syntax(line, col, format!("unexpected `{}` in operator letter", chars[j])));
                }
                if label.is_empty() {
                    return Err(syntax(line, col, "empty operator label"));
                }
                out.push(Token { tok: Tok::Q(label), line: l0, column: c0 });
                i = j + 1;
                col += 1;
                continue;
            }
            c if is_label_char(c) => {
                let mut label = String::new();
                while i < chars.len() && is_label_char(chars[i]) {
                    label.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                out.push(Token { tok: Tok::Label(label), line: l0, column: c0 });
                continue;
            }
            other => return Err(syntax(line, col, format!("unexpected character `{other}`"))),
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l0, column: c0 });
        }
        i += 1;
        col += 1;
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        syntax(t.line, t.column, message)
    }

    fn label(&mut self, what: &str) -> Result<String> {
        match self.peek().tok.clone() {
            Tok::Label(l) => {
                self.bump();
                Ok(l)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn is_digits(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    }

    /// A coefficient is `digits ('/' digits)? '*'`.
    fn coefficient(&mut self) -> Result<Option<Scalar>> {
        let Tok::Label(n) = self.peek_at(0).clone() else { return Ok(None) };
        if !Self::is_digits(&n) {
            return Ok(None);
        }
        let text = match (self.peek_at(1), self.peek_at(2), self.peek_at(3)) {
            (Tok::Slash, Tok::Label(d), Tok::Star) => format!("{n}/{d}"),
            (Tok::Star, _, _) => n.clone(),
            _ => return Ok(None),
        };
        let start = self.peek().clone();
        let value = parse_rational(&text)
            .ok_or_else(|| syntax(start.line, start.column, format!("invalid rational `{text}`")))?;
        let consumed = if text.contains('/') { 4 } else { 2 };
        for _ in 0..consumed {
            self.bump();
        }
        Ok(Some(value))
    }

    fn word(&mut self) -> Result<WordAst> {
        let paren = self.peek().tok == Tok::LParen;
        if paren {
            self.bump();
        }
        let w = self.bare_word()?;
        if paren {
            if self.peek().tok != Tok::RParen {
                return Err(self.error("expected `)`"));
            }
            self.bump();
        }
        Ok(w)
    }

    fn bare_word(&mut self) -> Result<WordAst> {
        let first = match self.peek().tok.clone() {
            Tok::Label(l) => {
                self.bump();
                Some(l)
            }
            Tok::Q(_) => None,
            _ => return Err(self.error("expected a word")),
        };
        if first.is_some() && self.peek().tok == Tok::Dot {
            let mut slots = vec![first.expect("checked")];
            let mut ops = Vec::new();
            while self.peek().tok == Tok::Dot {
                self.bump();
                ops.push(self.label("an operator label")?);
                if self.peek().tok != Tok::Dot {
                    return Err(self.error("expected `.`"));
                }
                self.bump();
                slots.push(self.label("a basis label")?);
            }
            if self.peek().tok != Tok::Colon {
                return Err(self.error("operated words end with `: generator`"));
            }
            self.bump();
            let generator = self.label("a generator")?;
            return Ok(WordAst::Operated { slots, ops, generator });
        }
        let mut slots = vec![first];
        let mut ops = Vec::new();
        while let Tok::Q(label) = self.peek().tok.clone() {
            self.bump();
            ops.push(label);
            match self.peek().tok.clone() {
                Tok::Label(l) => {
                    self.bump();
                    slots.push(Some(l));
                }
                _ => slots.push(None),
            }
        }
        let generator = if self.peek().tok == Tok::Colon {
            self.bump();
            Some(self.label("a generator")?)
        } else {
            None
        };
        Ok(WordAst::Op { slots, ops, generator })
    }

    fn term(&mut self, negate: bool) -> Result<Term> {
        let coeff = self.coefficient()?.unwrap_or_else(Scalar::one);
        let word = self.word()?;
        Ok(Term {
            coeff: if negate { -coeff } else { coeff },
            word,
        })
    }

    fn expression(&mut self) -> Result<ExpressionAst> {
        if self.peek().tok == Tok::Label("0".into()) && self.peek_at(1) == &Tok::End {
            return Ok(ExpressionAst::default());
        }
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek().tok == Tok::Minus {
            self.bump();
            negate = true;
        }
        terms.push(self.term(negate)?);
        loop {
            match self.peek().tok {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::End => break,
                _ => return Err(self.error("expected `+`, `-` or end of input")),
            }
            self.bump();
            terms.push(self.term(negate)?);
        }
        Ok(ExpressionAst { terms })
    }
}

pub fn parse_expression(text: &str) -> Result<ExpressionAst> {
    let toks = tokenize(text)?;
    Parser { toks, pos: 0 }.expression()
}

impl fmt::Display for WordAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordAst::Op { slots, ops, generator } => {
                let mut parts = Vec::new();
                for (k, s) in slots.iter().enumerate() {
                    if k > 0 {
                        parts.push(format!("Q[{}]", ops[k - 1]));
                    }
                    if let Some(s) = s {
                        parts.push(s.clone());
                    }
                }
                write!(f, "{}", parts.join(" "))?;
                if let Some(g) = generator {
                    write!(f, " : {g}")?;
                }
                Ok(())
            }
            WordAst::Operated { slots, ops, generator } => {
                let mut parts = vec![slots[0].clone()];
                for (o, s) in ops.iter().zip(&slots[1..]) {
                    parts.push(o.clone());
                    parts.push(s.clone());
                }
                write!(f, "{} : {generator}", parts.join(" . "))
            }
        }
    }
}

impl fmt::Display for ExpressionAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if !abs.is_one() {
                write!(f, "{} * ", format_rational(&abs))?;
            }
            write!(f, "{}", t.word)?;
        }
        Ok(())
    }
}

fn basis(inst: &MrbAlgebraInstance, label: &Option<String>) -> Result<Vec<Scalar>> {
    match label {
        Some(l) => Ok(inst.algebra().basis_vector(inst.basis_index_or_err(l)?)),
        None => Ok(inst.algebra().unit().to_vec()),
    }
}

fn op_term(inst: &MrbAlgebraInstance, slots: &[Option<String>], ops: &[String], coeff: &Scalar) -> Result<OpElement> {
    let vecs = slots.iter().map(|s| basis(inst, s)).collect::<Result<Vec<_>>>()?;
    let ops = ops.iter().map(|o| inst.omega_index_or_err(o)).collect::<Result<Vec<_>>>()?;
    Ok(expand(&vecs, &ops, coeff))
}

impl ExpressionAst {
    /// Resolves an expression without generators into the operator ring.
    pub fn to_op_element(&self, inst: &MrbAlgebraInstance) -> Result<OpElement> {
        let mut out = OpElement::new();
        for t in &self.terms {
            match &t.word {
                WordAst::Op { slots, ops, generator: None } => {
                    out.add_assign(&op_term(inst, slots, ops, &t.coeff)?);
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "operator-ring expressions cannot name generators".into(),
                    ))
                }
            }
        }
        Ok(out)
    }

    /// Distinct generator names in order of appearance.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for t in &self.terms {
            let g = match &t.word {
                WordAst::Op { generator: Some(g), .. } | WordAst::Operated { generator: g, .. } => g,
                _ => continue,
            };
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }

    pub fn has_generators(&self) -> bool {
        !self.generator_names().is_empty()
    }

    pub fn is_operated(&self) -> bool {
        self.terms.iter().any(|t| matches!(t.word, WordAst::Operated { .. }))
    }

    /// Resolves into the free module. Operated words are translated with
    /// `r_1 ⊗ ω_1 ⊗ ... ⊗ r_n ⊗ x ↦ (r_1 Q_ω1 ... r_n, x)`. A term without
    /// a generator takes the single generator named elsewhere in the
    /// expression.
    pub fn to_free_module_element(&self, inst: &MrbAlgebraInstance, gens: &GeneratorSet) -> Result<FreeModuleElement> {
        let names = self.generator_names();
        let default = if names.len() == 1 { Some(names[0].clone()) } else { None };
        let mut out = FreeModuleElement::new();
        for t in &self.terms {
            let (slots, ops, generator): (Vec<Option<String>>, &Vec<String>, Option<&String>) = match &t.word {
                WordAst::Op { slots, ops, generator } => (slots.clone(), ops, generator.as_ref().or(default.as_ref())),
                WordAst::Operated { slots, ops, generator } => {
                    (slots.iter().cloned().map(Some).collect(), ops, Some(generator))
                }
            };
            let generator = generator.ok_or_else(|| {
                Error::InvalidArgument("module expression term has no generator".into())
            })?;
            let g = gens.index_of(generator)?;
            for (w, c) in &op_term(inst, &slots, ops, &t.coeff)? {
                out.add_term(ModuleWord { word: w.clone(), generator: g }, c.clone());
            }
        }
        Ok(out)
    }

    /// Resolves an expression of operated words.
    pub fn to_operated_element(&self, inst: &MrbAlgebraInstance, gens: &GeneratorSet) -> Result<OperatedElement> {
        let mut out = OperatedElement::new();
        for t in &self.terms {
            let WordAst::Operated { slots, ops, generator } = &t.word else {
                return Err(Error::InvalidArgument("expected operated words".into()));
            };
            let slots = slots.iter().map(|s| inst.basis_index_or_err(s)).collect::<Result<Vec<_>>>()?;
            let ops = ops.iter().map(|o| inst.omega_index_or_err(o)).collect::<Result<Vec<_>>>()?;
            out.add_term(OperatedWord::new(slots, ops, gens.index_of(generator)?), t.coeff.clone());
        }
        Ok(out)
    }
}

fn labels(inst: &MrbAlgebraInstance, w: &OpWord) -> (Vec<Option<String>>, Vec<String>) {
    let basis = inst.algebra().basis_labels();
    (
        w.slots.iter().map(|&s| Some(basis[s].clone())).collect(),
        w.ops.iter().map(|&o| inst.omega()[o].clone()).collect(),
    )
}

fn from_terms<K: Ord + Clone>(e: &LinComb<K>, mut word: impl FnMut(&K) -> WordAst) -> ExpressionAst {
    ExpressionAst {
        terms: e
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Term { coeff: c.clone(), word: word(k) })
            .collect(),
    }
}

pub fn op_element_ast(inst: &MrbAlgebraInstance, e: &OpElement) -> ExpressionAst {
    from_terms(e, |w| {
        let (slots, ops) = labels(inst, w);
        WordAst::Op { slots, ops, generator: None }
    })
}

pub fn free_module_ast(inst: &MrbAlgebraInstance, gens: &GeneratorSet, e: &FreeModuleElement) -> ExpressionAst {
    from_terms(e, |mw| {
        let (slots, ops) = labels(inst, &mw.word);
        WordAst::Op { slots, ops, generator: Some(gens.names()[mw.generator].clone()) }
    })
}

pub fn operated_ast(inst: &MrbAlgebraInstance, gens: &GeneratorSet, e: &OperatedElement) -> ExpressionAst {
    let basis = inst.algebra().basis_labels();
    from_terms(e, |w| WordAst::Operated {
        slots: w.slots.iter().map(|&s| basis[s].clone()).collect(),
        ops: w.ops.iter().map(|&o| inst.omega()[o].clone()).collect(),
        generator: gens.names()[w.generator].clone(),
    })
}
