#pragma once

#include "flatdeg/surface.hpp"

#include <string>

namespace flatdeg {

class SyntaxError : public Error {
public:
    SyntaxError(int line, int column, const std::string& msg)
        : Error("SyntaxError", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

// SURF v1:
//   surf 1
//   component <name>                  (optional; polygons below belong to it)
//   polygon <id> x,y x,y ...          (counterclockwise, rational coordinates)
//   glue <id>.<edge> <id>.<edge> [flip]
//   mark <id>.<vertex>
// or a single line `origami h=(...) v=(...)`. '#' starts a comment.
PolySurface parse_surf(const std::string& text);
// Writes the canonical form.
std::string serialize_surf(const PolySurface& s);

// A path to a SURF file, or inline text starting with "origami".
PolySurface load_surface(const std::string& path_or_inline);

}  // namespace flatdeg
