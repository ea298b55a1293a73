// Exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace gdm {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define GDM_DEFINE_ERROR(Name)                                  \
  struct Name : Error {                                         \
    explicit Name(const std::string& msg) : Error(msg) {}       \
  }

// mesh construction and generation
GDM_DEFINE_ERROR(NonClosedCell);
GDM_DEFINE_ERROR(NotStarShaped);
GDM_DEFINE_ERROR(OrphanFace);
GDM_DEFINE_ERROR(InvalidResolution);
GDM_DEFINE_ERROR(ValidationError);

// mesh file IO
struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

// assembly and model data
GDM_DEFINE_ERROR(NonSymmetricTensor);
GDM_DEFINE_ERROR(NonPositiveTensor);
GDM_DEFINE_ERROR(QuadratureFailure);
GDM_DEFINE_ERROR(NonSimplicialMesh);
GDM_DEFINE_ERROR(ZeroTensor);
GDM_DEFINE_ERROR(InvalidParams);

// time stepping
GDM_DEFINE_ERROR(NonlinearDivergence);
GDM_DEFINE_ERROR(LinearSolveFailure);
GDM_DEFINE_ERROR(OutOfRangeTime);

// diagnostics and front-end
GDM_DEFINE_ERROR(MeshTooLargeForDiagnostic);
GDM_DEFINE_ERROR(InvalidTestFunction);
GDM_DEFINE_ERROR(ConfigError);
GDM_DEFINE_ERROR(IoError);

#undef GDM_DEFINE_ERROR

}  // namespace gdm
