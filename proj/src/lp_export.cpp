#include <fmt/format.h>

#include "scpcs/solver_exact.hpp"

namespace scpcs {
namespace {

// CPLEX LP readers cap line length, so long expressions are wrapped.
constexpr std::size_t kTermsPerLine = 10;

class ExpressionWriter {
 public:
  explicit ExpressionWriter(std::string& out) : out_(out) {}

  void term(Cost coef, std::string_view var) {
    if (count_ > 0) {
      out_ += (count_ % kTermsPerLine == 0) ? "\n   " : " ";
      out_ += coef < 0 ? "- " : "+ ";
    } else if (coef < 0) {
      out_ += "- ";
    }
    const Cost mag = coef < 0 ? -coef : coef;
    if (mag != 1 || force_coef_) out_ += fmt::format("{} ", mag);
    out_ += var;
    ++count_;
  }

  // Objective terms always carry their coefficient, including 1 and 0.
  void force_coefficients() { force_coef_ = true; }

 private:
  std::string& out_;
  std::size_t count_ = 0;
  bool force_coef_ = false;
};

std::string x_name(SubsetId j) { return fmt::format("x{}", j + 1); }
std::string y_name(const Conflict& c) { return fmt::format("y{}_{}", c.i + 1, c.j + 1); }

}  // namespace

std::string export_lp(const Instance& inst) {
  for (ElementId k = 0; k < inst.num_elements(); ++k) {
    if (inst.coverers(k).empty()) {
      throw InfeasibleError(k, fmt::format("export_lp: element {} has no coverer", k + 1));
    }
  }
  std::string out;
  out += fmt::format("\\ SCP-CS model {}\n", inst.name().empty() ? "unnamed" : inst.name());
  out += "Minimize\n obj: ";
  {
    ExpressionWriter obj(out);
    obj.force_coefficients();
    for (SubsetId j = 0; j < inst.num_subsets(); ++j) obj.term(inst.cost(j), x_name(j));
    for (const auto& c : inst.conflicts()) obj.term(c.penalty, y_name(c));
  }
  out += "\nSubject To\n";
  for (ElementId k = 0; k < inst.num_elements(); ++k) {
    out += fmt::format(" cover{}: ", k + 1);
    ExpressionWriter row(out);
    for (SubsetId j : inst.coverers(k)) row.term(1, x_name(j));
    out += " >= 1\n";
  }
  for (const auto& c : inst.conflicts()) {
    out += fmt::format(" link{}_{}: {} - {} - {} >= -1\n", c.i + 1, c.j + 1, y_name(c), x_name(c.i),
                       x_name(c.j));
  }
  out += "Binaries\n";
  for (SubsetId j = 0; j < inst.num_subsets(); ++j) {
    out += ' ';
    out += x_name(j);
    if ((j + 1) % kTermsPerLine == 0 || j + 1 == inst.num_subsets()) out += '\n';
  }
  std::size_t q = 0;
  for (const auto& c : inst.conflicts()) {
    out += ' ';
    out += y_name(c);
    if (++q % kTermsPerLine == 0 || q == inst.conflicts().size()) out += '\n';
  }
  out += "End\n";
  return out;
}

}  // namespace scpcs
