//! Finite extensions of `Q_p` as unramified-then-Eisenstein towers, root
//! finding inside them, and Galois groups of splitting fields.

mod extend;
mod field;
mod galois;
mod roots;
mod unramified;

pub use extend::{extend, extend_tame, extend_unramified};
pub use field::{make_field, FieldElem, LocalField};
pub use galois::{
    embeddings, joint_context, splitting_context, Automorphism, Embedding, FiniteGroup, GSet, GaloisContext,
    GaloisOptions, HomSet, Splitting,
};
pub use roots::{find_roots, separation, taylor_shift, Obstruction, RootSearch};
pub use unramified::{UElem, UnramifiedRing};
