#include "upmu/lp_format.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace upmu {

namespace {

constexpr int kTermsPerLine = 8;

void write_expression(std::ostringstream& out, const std::vector<Term>& terms,
                      const VariableCatalog& cat) {
  int on_line = 0;
  bool first = true;
  for (const Term& t : terms) {
    if (t.coef == 0) continue;
    if (on_line == kTermsPerLine) {
      out << "\n  ";
      on_line = 0;
    }
    const int mag = t.coef < 0 ? -t.coef : t.coef;
    if (first) {
      if (t.coef < 0) out << "- ";
    } else {
      out << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag << ' ';
    out << cat.name(t.var);
    first = false;
    ++on_line;
  }
  if (first) out << "0 " << cat.name(0);
}

}  // namespace

std::string export_lp(const IlpInstance& instance) {
  const VariableCatalog& cat = instance.catalog;
  std::ostringstream out;
  out << "\\ uPMU placement: " << cat.node_count() << " nodes, " << cat.channel_count()
      << " channel variables, " << instance.rows.size() << " rows, " << instance.config_count
      << " switch configuration(s), K = " << cat.capacity() << "\n";
  out << "Minimize\n obj: ";
  std::vector<Term> objective;
  for (std::size_t v = 0; v < instance.objective.size(); ++v) {
    objective.push_back({v, instance.objective[v]});
  }
  write_expression(out, objective, cat);
  out << "\nSubject To\n";
  for (const Row& row : instance.rows) {
    out << ' ' << row.name << ": ";
    write_expression(out, row.terms, cat);
    out << " >= " << row.rhs << '\n';
  }
  out << "Binaries\n";
  int on_line = 0;
  for (std::size_t v = 0; v < cat.variable_count(); ++v) {
    if (cat.role(v) == VarRole::devices) continue;
    out << ' ' << cat.name(v);
    if (++on_line == kTermsPerLine) {
      out << '\n';
      on_line = 0;
    }
  }
  if (on_line != 0) out << '\n';
  out << "Generals\n";
  on_line = 0;
  for (int i = 1; i <= cat.node_count(); ++i) {
    out << ' ' << cat.name(cat.n(i));
    if (++on_line == kTermsPerLine) {
      out << '\n';
      on_line = 0;
    }
  }
  if (on_line != 0) out << '\n';
  out << "End\n";
  return out.str();
}

std::vector<std::uint8_t> read_solution_channels(std::string_view text,
                                                 const VariableCatalog& catalog) {
  std::vector<std::uint8_t> bits(catalog.channel_count(), 0);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t recognized = 0;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      auto var = catalog.find_name(tokens[i]);
      if (!var) continue;
      double value = 0.0;
      try {
        value = std::stod(tokens[i + 1]);
      } catch (const std::exception&) {
        continue;
      }
      if (catalog.role(*var) == VarRole::channel) {
        bits[*var - catalog.g(0)] = value >= 0.5 ? 1 : 0;
        ++recognized;
      }
      break;
    }
  }
  if (recognized == 0 && catalog.channel_count() > 0) {
    throw std::runtime_error("solution file names no channel variable of this instance");
  }
  return bits;
}

}  // namespace upmu
