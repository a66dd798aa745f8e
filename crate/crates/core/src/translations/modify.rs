use crate::effect::{
    ModifyNondet, ModifyOp, Signature, SumOp, Tree, Undo, Value, or, restore, side, update,
};

/// Replaces every update with an update whose failing side branch restores
/// the delta on backtracking. Inputs must not contain restore operations.
pub fn local2global_m<S: Value + Undo<R>, R: Value, F: Signature, A: Value>(
    t: &Tree<ModifyNondet<S, R, F>, A>,
) -> Tree<ModifyNondet<S, R, F>, A> {
    t.fold(Tree::Leaf, |op| match op {
        SumOp::Inl(ModifyOp::Update(r, k)) => {
            let undo: Tree<ModifyNondet<S, R, F>, ()> = restore::<S, R, _, _>(r.clone());
            or(update::<S, R, _, _>(r), side(&undo)).then(k)
        }
        op => Tree::node(op),
    })
}
