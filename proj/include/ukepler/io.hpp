#pragma once

#include <string>

#include "ukepler/generators.hpp"

namespace ukepler {

// JSON file formats.
//
// Algebra element:
//   {"algebra":"hn","n":2,"re":[...n*n row-major...],"im":[...]}
//   {"algebra":"gamma3","x0":1.0,"vec":[0,0,0]}
// The loader checks hermiticity to 1e-12 and rejects otherwise.
//
// Phase point (embedded data is always recomputed, never stored):
//   {"algebra":"hn","n":2,"pivot":0,"q":[...],"p":[...]}
//
// Generator spec ("u"/"v" are element file paths):
//   {"kind":"X"|"Y"|"S"|"L"|"Luv"|"Ham"|"LRL"|"L2"|"A2","u":"u.json","v":"v.json"}

Element<double> load_element(const std::string& path);
void save_element(const std::string& path, const Element<double>& e);

PhasePoint load_phase_point(const std::string& path);
void save_phase_point(const std::string& path, const PhasePoint& ph);

GeneratorSpec load_generator_spec(const std::string& path, const AlgebraDescriptor& expected);

}  // namespace ukepler
