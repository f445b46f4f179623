use num_traits::Zero;

use super::{a_minus_i, same_base, wojciech_gap, ClassifyError, Verdict};
use crate::extension::{wojciech_vector, SinkExtension};
use crate::graph::vertex_matrix;
use crate::lattice::{cokernel, kernel_basis, AbelianGroup, IntMatrix, IntVector};

fn require_one_sink(ext: &SinkExtension) -> Result<(), ClassifyError> {
    match ext.sink_count() {
        1 => Ok(()),
        n => Err(ClassifyError::NotOneSink(n)),
    }
}

/// `[Aᵗ − I ; Wᵗ]` for a 1-sink extension.
pub fn k0_matrix(ext: &SinkExtension) -> Result<IntMatrix, ClassifyError> {
    require_one_sink(ext)?;
    let g = ext.base_graph();
    if let Some(v) = g.sinks().into_iter().next() {
        return Err(ClassifyError::SinkInBase(v));
    }
    let w = wojciech_vector(ext, 0)?.to_dense(g.vertices());
    Ok(vertex_matrix(&g).transpose().minus_identity()?.stack_row(&w, "W")?)
}

/// The cokernel of `[Aᵗ − I ; Wᵗ]`.
pub fn k0_presentation(ext: &SinkExtension) -> Result<AbelianGroup, ClassifyError> {
    Ok(cokernel(&k0_matrix(ext)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    /// `ker(Aᵗ − I)` is trivial, or both Wojciech vectors annihilate it.
    pub hypothesis_holds: bool,
    pub kernel: Vec<IntVector>,
}

/// Whether the Wojciech gap of two 1-sink extensions lies in `im(A − I)`;
/// a negative answer is conclusive only under the kernel hypothesis.
pub fn embedding_obstruction(
    first: &SinkExtension,
    second: &SinkExtension,
) -> Result<ObstructionReport, ClassifyError> {
    let g = same_base(first, second)?;
    require_one_sink(first)?;
    require_one_sink(second)?;
    let kernel = kernel_basis(&a_minus_i(&g).transpose());
    let w1 = wojciech_vector(first, 0)?.to_dense(g.vertices());
    let w2 = wojciech_vector(second, 0)?.to_dense(g.vertices());
    let hypothesis_holds = kernel.iter().all(|k| k.dot(&w1).is_zero() && k.dot(&w2).is_zero());
    let verdict = match wojciech_gap(first, second, 0, None)? {
        Verdict::Obstructed(reason) if !hypothesis_holds => {
            let ks: Vec<String> = kernel.iter().map(ToString::to_string).collect();
            Verdict::Inconclusive(format!(
                "{reason}, but ker(Aᵗ−I) = span {{{}}} is not annihilated by both W",
                ks.join(", ")
            ))
        }
        other => other,
    };
    Ok(ObstructionReport { verdict, hypothesis_holds, kernel })
}
