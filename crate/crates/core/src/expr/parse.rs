use super::{BinOp, Expr, ExprError, Func, Node};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && b.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && b[j].is_ascii_digit() {
                    i = j;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s = &text[start..i];
            let v: f64 = s.parse().map_err(|_| ExprError::Syntax {
                pos: start,
                message: format!("malformed number '{s}'"),
            })?;
            out.push((Tok::Num(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                // element-wise aliases
                '.' if matches!(b.get(i + 1), Some(b'*' | b'/' | b'^')) => {
                    i += 1;
                    Tok::Op(b[i] as char)
                }
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => {
                    return Err(ExprError::Syntax {
                        pos: start,
                        message: format!("unexpected character '{c}'"),
                    })
                }
            };
            i += 1;
            out.push((tok, start));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, expected: &str) -> ExprError {
        let found = match self.peek() {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Op(c) => format!("'{c}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        };
        ExprError::Syntax {
            pos: self.pos(),
            message: format!("expected {expected}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            self.bump();
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        match *self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(match self.unary()? {
                    Node::Num(v) => Node::Num(-v),
                    n => Node::Neg(Box::new(n)),
                })
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node, ExprError> {
        let base = self.primary()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let exp = self.unary()?;
            return Ok(Node::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(Node::Num(v)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(name, pos),
            _ => {
                self.at -= 1;
                Err(self.unexpected("a number, variable, function or '('"))
            }
        }
    }

    fn variable(&self, name: &str, pos: usize) -> Result<Option<Node>, ExprError> {
        let Some(rest) = name.strip_prefix('x') else {
            return Ok(None);
        };
        if rest.is_empty() {
            return if self.dim == 1 {
                Ok(Some(Node::Var(0)))
            } else {
                Err(ExprError::Syntax {
                    pos,
                    message: format!("bare 'x' needs dimension 1 (dimension is {}); use x1..x{}", self.dim, self.dim),
                })
            };
        }
        if !rest.bytes().all(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let index: usize = rest.parse().unwrap_or(0);
        if index == 0 || index > self.dim {
            return Err(ExprError::Dimension {
                pos,
                index,
                dim: self.dim,
            });
        }
        Ok(Some(Node::Var(index - 1)))
    }

    fn ident(&mut self, name: String, pos: usize) -> Result<Node, ExprError> {
        if *self.peek() != Tok::LParen {
            return match name.as_str() {
                "pi" => Ok(Node::Num(std::f64::consts::PI)),
                "e" => Ok(Node::Num(std::f64::consts::E)),
                _ => match self.variable(&name, pos)? {
                    Some(v) => Ok(v),
                    None => Err(ExprError::Unknown { pos, name }),
                },
            };
        }
        if name == "prod" {
            self.bump();
            if let Tok::Ident(arg) = self.peek() {
                if arg == "x" {
                    self.bump();
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(Node::Prod);
                }
            }
            return Err(self.unexpected("'x' (prod takes the whole point)"));
        }
        let Some(func) = Func::from_name(&name) else {
            return Err(ExprError::Unknown { pos, name });
        };
        self.bump();
        let mut args = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen, "',' or ')'")?;
        if args.len() != func.arity() {
            return Err(ExprError::Arity {
                pos,
                name,
                expected: func.arity(),
                got: args.len(),
            });
        }
        Ok(Node::Call(func, args))
    }
}

/// Parses `text` as an expression over `dim >= 1` coordinates.
///
/// ```
/// use gailrs::expr::parse;
///
/// let e = parse("exp(-x1^2-x2^2)", 2).unwrap();
/// assert_eq!(e.eval(&[0.0, 0.0]), 1.0);
/// assert_eq!(parse("2^3^2", 1).unwrap().eval(&[0.0]), 512.0);
/// ```
pub fn parse(text: &str, dim: usize) -> Result<Expr, ExprError> {
    if dim == 0 {
        return Err(ExprError::Syntax {
            pos: 0,
            message: "dimension must be at least 1".into(),
        });
    }
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        dim,
    };
    let root = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Expr::new(root, dim)
}
