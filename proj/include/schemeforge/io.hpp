#ifndef SCHEMEFORGE_IO_HPP
#define SCHEMEFORGE_IO_HPP

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "schemeforge/catalog.hpp"

namespace schemeforge {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Exact and approximate scalar rendering

inline json scalars_json(const std::vector<Scalar>& v) {
  json out = json::array();
  for (const Scalar& s : v) out.push_back(to_string(s));
  return out;
}

inline json matrix_json(const ExactMatrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_string(m.at(r, c)));
    out.push_back(row);
  }
  return out;
}

// Nearest double, for display only; reports always carry the exact strings.
inline double approx_value(const Scalar& s) {
  double value = numerator(s.rational_part()).convert_to<double>() /
                 denominator(s.rational_part()).convert_to<double>();
  if (!s.is_rational())
    value += numerator(s.radical_part()).convert_to<double>() /
             denominator(s.radical_part()).convert_to<double>() *
             std::sqrt(static_cast<double>(s.discriminant()));
  return value;
}

inline json scalars_approx_json(const std::vector<Scalar>& v) {
  json out = json::array();
  for (const Scalar& s : v) out.push_back(approx_value(s));
  return out;
}

inline json matrix_approx_json(const ExactMatrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(approx_value(m.at(r, c)));
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hex-packed relation rows

// Each row packs four points per lowercase hex digit, earliest point in the
// most significant bit; the last digit is zero-padded. A relation on n
// points therefore serialises as n strings of ceil(n/4) digits each.
inline std::string encode_relation_row(const RelationMatrix& rel, int x) {
  int n = rel.size();
  std::string out;
  out.reserve((n + 3) / 4);
  for (int base = 0; base < n; base += 4) {
    int nibble = 0;
    for (int bit = 0; bit < 4; ++bit) {
      nibble <<= 1;
      if (base + bit < n && rel.get(x, base + bit)) nibble |= 1;
    }
    out.push_back("0123456789abcdef"[nibble]);
  }
  return out;
}

inline json encode_relations(const std::vector<RelationMatrix>& rels) {
  json out = json::array();
  for (const RelationMatrix& rel : rels) {
    json rows = json::array();
    for (int x = 0; x < rel.size(); ++x)
      rows.push_back(encode_relation_row(rel, x));
    out.push_back(rows);
  }
  return out;
}

namespace detail {

inline int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw ParseError(std::string("invalid hex digit '") + c + "'");
}

}  // namespace detail

// Decodes the full relation list and checks that the relations partition
// the point pairs, so the resulting scheme has a total classifier.
inline std::vector<RelationMatrix> decode_relations(const json& matrices) {
  if (!matrices.is_array() || matrices.empty())
    throw ParseError("relations must be a non-empty array of matrices");
  std::size_t n = matrices[0].is_array() ? matrices[0].size() : 0;
  if (n == 0 || n > 500)
    throw ParseError("relation matrices need 1 to 500 rows");
  std::size_t width = (n + 3) / 4;

  std::vector<RelationMatrix> rels;
  for (const json& rows : matrices) {
    if (!rows.is_array() || rows.size() != n)
      throw ParseError("all relation matrices need the same row count");
    RelationMatrix rel(static_cast<int>(n));
    for (std::size_t x = 0; x < n; ++x) {
      if (!rows[x].is_string())
        throw ParseError("relation rows must be hex strings");
      const std::string& text = rows[x].get_ref<const std::string&>();
      if (text.size() != width)
        throw ParseError("row '" + text + "' has the wrong length");
      for (std::size_t pos = 0; pos < text.size(); ++pos) {
        int nibble = detail::hex_digit(text[pos]);
        for (int bit = 0; bit < 4; ++bit) {
          std::size_t y = pos * 4 + bit;
          bool set = (nibble >> (3 - bit)) & 1;
          if (y >= n) {
            if (set) throw ParseError("padding bits must be zero");
            continue;
          }
          if (set) rel.set(static_cast<int>(x), static_cast<int>(y));
        }
      }
    }
    rels.push_back(std::move(rel));
  }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      int hits = 0;
      for (const RelationMatrix& rel : rels)
        hits += rel.get(static_cast<int>(x), static_cast<int>(y)) ? 1 : 0;
      if (hits != 1)
        throw ParseError("pair (" + std::to_string(x) + "," +
                         std::to_string(y) +
                         ") is covered by " + std::to_string(hits) +
                         " relations");
    }
  return rels;
}

// ---------------------------------------------------------------------------
// Scheme descriptors

struct DescriptorResult {
  Scheme scheme;
  json metadata = json::object();
};

namespace detail {

inline long long parse_count(const std::string& text) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + text + "'");
  }
  if (used != text.size())
    throw ParseError("expected an integer, got '" + text + "'");
  return value;
}

inline std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
}

}  // namespace detail

// Catalog tokens: johnson:v,k | pg:s,t,a | srg:v,k,l,m | dualpolar:FAM,q |
// octagon:s,t | genpw:q,n[,explicit] | taylor:k,mu.
inline DescriptorResult scheme_from_catalog_token(const std::string& token) {
  std::size_t sep = token.find(':');
  if (sep == std::string::npos)
    throw ParseError("catalog token needs the form name:params");
  std::string name = token.substr(0, sep);
  std::vector<std::string> args = detail::split_on(token.substr(sep + 1), ',');
  auto arity = [&](std::size_t want) {
    if (args.size() != want)
      throw ParseError("catalog family '" + name + "' takes " +
                       std::to_string(want) + " parameters");
  };
  auto num = [&](std::size_t i) { return detail::parse_count(args[i]); };

  json metadata = json::object();
  auto build = [&]() -> Scheme {
    if (name == "johnson") {
      arity(2);
      return johnson(static_cast<int>(num(0)), static_cast<int>(num(1)));
    }
    if (name == "pg") {
      arity(3);
      return pg_scheme(PgParameters{num(0), num(1), num(2)});
    }
    if (name == "srg") {
      arity(4);
      return srg_scheme(num(0), num(1), num(2), num(3));
    }
    if (name == "dualpolar") {
      arity(2);
      DualPolarFamily family;
      if (args[0] == "DH5")
        family = DualPolarFamily::DH5;
      else if (args[0] == "DQ6")
        family = DualPolarFamily::DQ6;
      else if (args[0] == "DW5")
        family = DualPolarFamily::DW5;
      else
        throw ParseError("dual polar family must be DH5, DQ6, or DW5");
      metadata["formal_parameter_note"] =
          "q is treated as a formal parameter; the prime-power condition is "
          "not checked";
      return dual_polar_scheme(family, num(1));
    }
    if (name == "octagon") {
      arity(2);
      return octagon_scheme(num(0), num(1));
    }
    if (name == "genpw") {
      if (args.size() == 3 && args[2] == "explicit")
        return genpw_explicit(num(0), static_cast<int>(num(1)));
      arity(2);
      return genpw_param(num(0), static_cast<int>(num(1)));
    }
    if (name == "taylor") {
      arity(2);
      return taylor_scheme(num(0), num(1));
    }
    throw ParseError("unknown catalog family '" + name + "'");
  };
  return DescriptorResult{build(), std::move(metadata)};
}

inline ExactMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw ParseError("P must be a non-empty array of rows");
  std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (cols == 0) throw ParseError("P rows must be non-empty arrays");
  ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != cols)
      throw ParseError("P rows must all have the same length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!rows[r][c].is_string())
        throw ParseError("P entries must be scalar strings");
      m.at(static_cast<int>(r), static_cast<int>(c)) =
          parse_scalar(rows[r][c].get_ref<const std::string&>());
    }
  }
  return m;
}

inline std::vector<long long> counts_from_json(const json& arr,
                                               const char* what) {
  if (!arr.is_array() || arr.empty())
    throw ParseError(std::string(what) + " must be a non-empty array");
  std::vector<long long> out;
  for (const json& v : arr) {
    if (!v.is_number_integer())
      throw ParseError(std::string(what) + " entries must be integers");
    out.push_back(v.get<long long>());
  }
  return out;
}

// A descriptor holds exactly one source: a catalog token, hex-packed
// relations, an eigenmatrix of scalar strings, or an intersection array.
inline DescriptorResult resolve_descriptor(const json& desc) {
  if (!desc.is_object())
    throw ParseError("descriptor must be a JSON object");
  if (desc.size() != 1)
    throw ParseError("descriptor needs exactly one source key");
  auto item = desc.begin();
  const std::string& key = item.key();
  const json& value = item.value();

  if (key == "catalog") {
    if (!value.is_string())
      throw ParseError("catalog value must be a string token");
    return scheme_from_catalog_token(value.get_ref<const std::string&>());
  }
  if (key == "relations")
    return DescriptorResult{Scheme::from_relations(decode_relations(value))};
  if (key == "P")
    return DescriptorResult{Scheme::from_eigenmatrix(matrix_from_json(value))};
  if (key == "intersection_array") {
    if (!value.is_object() || !value.contains("b") || !value.contains("c") ||
        value.size() != 2)
      throw ParseError("intersection_array needs exactly the keys b and c");
    SpectralData sd = spectral_from_intersection_array(
        counts_from_json(value["b"], "b"), counts_from_json(value["c"], "c"));
    return DescriptorResult{Scheme::from_eigenmatrix(sd.P)};
  }
  throw ParseError("unknown descriptor key '" + key + "'");
}

inline const char* source_name(SchemeSource source) {
  switch (source) {
    case SchemeSource::ExplicitRelations:
      return "relations";
    case SchemeSource::IntersectionMatrices:
      return "intersection-matrices";
    default:
      return "eigenmatrix";
  }
}

}  // namespace schemeforge

#endif
