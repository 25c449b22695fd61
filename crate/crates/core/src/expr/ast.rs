use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A named map: a builtin such as `p` or `tau2`, or a REPL binding.
    Atom(String),
    RGen(u64),
    FiniteLit(Vec<(Nat, Nat)>),
    Inverse(Box<Expr>),
    Power(Box<Expr>, u64),
    Bang(Box<Expr>),
    Whimper(Box<Expr>),
    Compose(Box<Expr>, Box<Expr>),
    Star(Box<Expr>, Box<Expr>),
    Odot(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Exec(Box<Expr>),
}

impl Expr {
    pub fn atom(name: &str) -> Self {
        Expr::Atom(name.to_string())
    }

    pub fn inverse(self) -> Self {
        Expr::Inverse(Box::new(self))
    }

    pub fn power(self, k: u64) -> Self {
        Expr::Power(Box::new(self), k)
    }

    pub fn bang(self) -> Self {
        Expr::Bang(Box::new(self))
    }

    pub fn whimper(self) -> Self {
        Expr::Whimper(Box::new(self))
    }

    pub fn exec(self) -> Self {
        Expr::Exec(Box::new(self))
    }

    pub fn compose(self, first: Expr) -> Self {
        Expr::Compose(Box::new(self), Box::new(first))
    }

    pub fn star(self, other: Expr) -> Self {
        Expr::Star(Box::new(self), Box::new(other))
    }

    pub fn odot(self, other: Expr) -> Self {
        Expr::Odot(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Expr) -> Self {
        Expr::Join(Box::new(self), Box::new(other))
    }

    /// Binding strength, tightest highest.
    pub(crate) fn precedence(&self) -> u8 {
        match self {
            Expr::Join(..) => 1,
            Expr::Compose(..) => 2,
            Expr::Star(..) | Expr::Odot(..) => 3,
            Expr::Bang(_) | Expr::Whimper(_) => 4,
            Expr::Inverse(_) | Expr::Power(..) => 5,
            Expr::Atom(_) | Expr::RGen(_) | Expr::FiniteLit(_) | Expr::Exec(_) => 6,
        }
    }
}
