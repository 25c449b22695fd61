//! The named maps and operators of the untyped GoI model.
//!
//! Words in the dynamical algebra are written diagrammatically in the
//! literature ("p p‡ = 1" means apply p first). Everything here uses the
//! functional reading instead; the translation is noted on each item.

mod cantor;
mod exec;
mod exponential;
mod structure;
mod tensor;

pub use cantor::{cantor_code, cantor_decode, gen_p, gen_p_dag, gen_q, gen_q_dag, sigma_star, succ, tau_star, SumIndex};
pub use exec::{exec, exec_eval, exec_trace, ExecOutcome, ExecRun, DEFAULT_EXEC_BUDGET};
pub use exponential::{
    bang, bang_truncated, copy_index, nu2, odot, psi, psi_inv, r_gen, sigma_odot, tau_odot, whimper,
    whimper_truncated, ProdIndex, MAX_COPY_INDEX,
};
pub use structure::{ExponentialStructure, SelfSimilarStructure, DEFAULT_RESIDUE_CAP};
pub use tensor::{star, star_via_join};
