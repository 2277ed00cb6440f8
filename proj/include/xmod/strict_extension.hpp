#pragma once

#include "xmod/crossed_module.hpp"

namespace xmod {

/// C1 ↣ C2 ↠ C3 with both the H-level and the G-level sequences extensions.
struct StrictExtension {
  CrossedModule C1;
  CrossedModule C2;
  CrossedModule C3;
  CrossedModuleHom incl;
  CrossedModuleHom proj;
};

/// Errors: Mismatch, NotExtension (names the failing level).
StrictExtension make_strict_extension(const CrossedModule& c1, const CrossedModule& c2, const CrossedModule& c3,
                                      const CrossedModuleHom& incl, const CrossedModuleHom& proj);

/// (1, ker ∂) ↣ C ↠ (G, H/ker ∂).
StrictExtension kernel_extension(const CrossedModule& c);
/// (∂H, H) ↣ C ↠ (G/∂H, 1).
StrictExtension image_extension(const CrossedModule& c);
/// (H, 1) ↣ (G ⋉ H, H) ↠ C. The G-level maps are h ↦ (∂h, h^{-1}) and
/// (g,h) ↦ g∂(h); the boundary of the middle term is h ↦ (1,h).
StrictExtension semidirect_extension(const CrossedModule& c);
/// (1, 1) ↣ C ↠ C.
StrictExtension trivial_extension(const CrossedModule& c);

/// The canonical pieces: C1 = (1, ker ∂), C2 = (G, H/ker ∂), C3 = (∂H, H/ker ∂)
/// which is thin, C4 = (G/∂H, 1), with C1 ↣ C ↠ C2 and C3 ↣ C2 ↠ C4.
struct Decomposition {
  CrossedModule C1;
  CrossedModule C2;
  CrossedModule C3;
  CrossedModule C4;
  StrictExtension kernel_ext;
  StrictExtension image_ext;
};

Decomposition decompose(const CrossedModule& c);

}  // namespace xmod
