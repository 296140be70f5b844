//! Goal-type definitions shipped with every bundle.

use crate::ast::GtDefs;
use crate::parse::parse_defs;

pub const LIBRARY: &str = r#"-- term structure
left(X,L) <- dest_trm(X,L,_).
right(X,R) <- dest_trm(X,_,R).
top_symbol_rec(T,Y) <- const(T,Y).
top_symbol_rec(T,Y) <- left(T,Z), top_symbol_rec(Z,Y).
has_symbol(T,Y) <- const(T,Y).
has_symbol(T,Y) <- right(T,Z), has_symbol(Z,Y).
has_symbol(T,Y) <- left(T,Z), has_symbol(Z,Y).
has_top_symbol(X,Y) <- member(X,Z), top_symbol(Z,Y).

-- goals
is_goal(X) <- eq_trm(concl,X).
has_hyp(X) <- member(hyps,Y), eq_trm(X,Y).
has_no_hyp(X) <- !has_hyp(X).
concl_top_in_hyp() <- top_symbol(concl,X), has_top_symbol(hyps,X).

-- shapes of conclusion and hypotheses
c(X) <- top_symbol(concl,X).
h(X) <- member(hyps,Z), top_symbol(Z,X).
c_not_var() <- c(not), dest_trm(concl,_,Z), !trm_var(Z).
h_not_var() <- member(hyps,Y), top_symbol(Y,not), dest_trm(Y,_,Z), !trm_var(Z).
c_not_literal(X) <- c(X), dest_trm(concl,_,Z), !trm_var(Z).
h_not_literal(X) <- member(hyps,Y), top_symbol(Y,X), dest_trm(Y,_,Z), !trm_var(Z).
"#;

pub fn library() -> GtDefs {
    parse_defs(LIBRARY).expect("library goal types parse")
}
