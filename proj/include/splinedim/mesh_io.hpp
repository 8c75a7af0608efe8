#pragma once

#include "splinedim/complex.hpp"

#include <string>

namespace splinedim {

struct MeshFormatError : Error {
    using Error::Error;
};
struct MeshIOError : Error {
    using Error::Error;
};

// JSON mesh: {"dimension", "kind", "vertices", "cells", optional "faces"}.
// Coordinates are integers or "p/q" strings; floats are rejected.
CellComplex parse_mesh(const std::string& json_text);
std::string format_mesh(const CellComplex& complex);

CellComplex read_mesh(const std::string& path);
void write_mesh(const CellComplex& complex, const std::string& path);

}  // namespace splinedim
