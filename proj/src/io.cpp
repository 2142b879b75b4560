#include "isoprofile/io.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "isoprofile/errors.hpp"
#include "isoprofile/parse.hpp"

namespace isoprofile {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

Presentation read_presentation(const json& p) {
  if (p.is_string()) return parse_presentation(p.get<std::string>());
  const json& gens = require(p, "generators");
  if (!gens.is_array()) throw ParseError("\"generators\" must be a list of names");
  std::vector<std::string> generators;
  for (const auto& g : gens) generators.push_back(g.get<std::string>());
  std::vector<Word> relators;
  if (p.contains("relators")) {
    if (!p.at("relators").is_array()) throw ParseError("\"relators\" must be a list of words");
    for (const auto& r : p.at("relators")) {
      relators.push_back(parse_word(r.get<std::string>(), generators));
    }
  }
  return Presentation(std::move(generators), std::move(relators));
}

std::shared_ptr<const WordOracle> read_oracle(const json* o,
                                              const Presentation& presentation,
                                              const LoadOptions& options) {
  std::string kind = presentation.relators().empty() ? "free" : "bfs";
  if (o) kind = require(*o, "kind").get<std::string>();
  if (kind == "free") return std::make_shared<FreeOracle>(presentation.rank());
  if (kind == "abelian") {
    return std::make_shared<FreeAbelianOracle>(presentation.rank());
  }
  if (kind == "table") {
    return std::make_shared<FiniteTableOracle>(
        presentation, require(*o, "identity").get<std::size_t>(),
        require(*o, "generators").get<std::vector<std::size_t>>(),
        require(*o, "multiplication").get<std::vector<std::vector<std::size_t>>>());
  }
  if (kind == "bfs") {
    std::optional<std::size_t> radius;
    std::size_t states = 200000;
    if (o && o->contains("radius")) radius = o->at("radius").get<std::size_t>();
    if (o && o->contains("max_states")) {
      states = o->at("max_states").get<std::size_t>();
    }
    if (options.oracle_radius) radius = options.oracle_radius;
    return std::make_shared<BoundedBfsOracle>(presentation, radius, states);
  }
  if (kind == "dehn") return std::make_shared<DehnOracle>(presentation);
  throw ParseError("unknown oracle kind \"" + kind + "\"");
}

std::size_t resolve_base(const json& ref, const std::vector<BaseCell>& below) {
  if (ref.is_number_integer()) {
    const auto i = ref.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= below.size()) {
      throw InvalidSkeleton("boundary refers to cell index " + std::to_string(i) +
                            " which does not exist");
    }
    return static_cast<std::size_t>(i);
  }
  const auto id = ref.get<std::string>();
  for (std::size_t i = 0; i < below.size(); ++i) {
    if (below[i].id == id) return i;
  }
  throw InvalidSkeleton("boundary refers to unknown cell \"" + id + "\"");
}

SkeletonSpec read_cells(int q, const Presentation& presentation,
                        const json& cells) {
  SkeletonSpec derived = presentation_complex(presentation);
  SkeletonSpec spec;
  spec.q = q;
  spec.presentation = presentation;
  spec.cells.resize(static_cast<std::size_t>(q) + 1);

  std::vector<std::vector<const json*>> by_dim(spec.cells.size());
  for (const auto& c : cells) {
    const int dim = require(c, "dim").get<int>();
    if (dim < 0 || dim > q) {
      throw InvalidSkeleton("cell of dimension " + std::to_string(dim) +
                            " in a " + std::to_string(q) + "-skeleton");
    }
    by_dim[dim].push_back(&c);
  }
  for (int t = 0; t <= q; ++t) {
    if (by_dim[t].empty() && t <= 1) {
      spec.cells[t] = derived.cells[t];
      continue;
    }
    for (const json* c : by_dim[t]) {
      BaseCell cell{require(*c, "id").get<std::string>(), {}};
      if (t > 0) {
        for (const auto& b : require(*c, "boundary")) {
          cell.boundary.push_back(
              {parse_word(require(b, "word").get<std::string>(),
                          presentation.generators()),
               resolve_base(require(b, "base"), spec.cells[t - 1]),
               require(b, "coeff").get<Coeff>()});
        }
      }
      spec.cells[t].push_back(std::move(cell));
    }
  }
  return spec;
}

}  // namespace

LoadedSkeleton load_skeleton(const json& doc, const LoadOptions& options) {
  try {
    const int q = require(doc, "dim").get<int>();
    if (q < 2) throw InvalidSkeleton("skeleton dimension must be at least 2");
    const Presentation presentation = read_presentation(require(doc, "presentation"));
    LoadedSkeleton out;
    if (doc.contains("cells")) {
      out.spec = read_cells(q, presentation, doc.at("cells"));
    } else if (q == 2) {
      out.spec = presentation_complex(presentation);
    } else {
      throw ParseError("a skeleton of dimension above 2 must list its cells");
    }
    check_structure(out.spec);
    out.oracle = read_oracle(doc.contains("oracle") ? &doc.at("oracle") : nullptr,
                             presentation, options);
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed skeleton: ") + e.what());
  }
}

LoadedSkeleton load_skeleton_file(const std::filesystem::path& path,
                                  const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return load_skeleton(doc, options);
}

json skeleton_to_json(const SkeletonSpec& spec) {
  const auto& gens = spec.presentation.generators();
  json relators = json::array();
  for (const auto& r : spec.presentation.relators()) {
    relators.push_back(format_word(r, gens));
  }
  json cells = json::array();
  for (int t = 0; t <= spec.q; ++t) {
    for (const auto& c : spec.cells[t]) {
      json boundary = json::array();
      for (const auto& b : c.boundary) {
        boundary.push_back({{"word", format_word(b.word, gens)},
                            {"base", spec.cells[t - 1][b.base].id},
                            {"coeff", b.coeff}});
      }
      cells.push_back({{"dim", t}, {"id", c.id}, {"boundary", boundary}});
    }
  }
  return {{"dim", spec.q},
          {"presentation", {{"generators", gens}, {"relators", relators}}},
          {"cells", cells}};
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string fingerprint(const SkeletonSpec& spec, const WordOracle& oracle) {
  return sha256_hex(skeleton_to_json(spec).dump() + "\n" + oracle.id());
}

Chain parse_chain(std::string_view text, const CellComplex& complex,
                  std::optional<int> dim) {
  const auto& spec = complex.spec();
  const auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("chain literal \"" + std::string(text) + "\": " + why);
  };
  std::vector<Term> terms;
  std::size_t i = 0;
  const auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (trim(text) == "0") {
    if (!dim) throw fail("the zero chain needs a known dimension");
    return Chain(*dim);
  }
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) {
      if (first) throw fail("empty");
      break;
    }
    Coeff sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw fail("expected + or - between terms");
    }
    Coeff k = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      const auto [end, ec] = std::from_chars(text.data() + i, text.data() + text.size(), k);
      if (ec != std::errc()) throw fail("bad coefficient");
      i = static_cast<std::size_t>(end - text.data());
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    if (i == text.size() || text[i] != '(') throw fail("expected (");
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw fail("missing )");
    const auto inner = text.substr(i + 1, close - i - 1);
    const auto comma = inner.rfind(',');
    if (comma == std::string_view::npos) throw fail("expected (word, cell)");
    const std::string id = trim(inner.substr(comma + 1));
    const auto where = spec.find(id);
    if (!where) throw fail("unknown cell \"" + id + "\"");
    if (dim && where->first != *dim) {
      throw InputError("chain literal mixes dimensions or has the wrong one");
    }
    dim = where->first;
    const Word g = parse_word(trim(inner.substr(0, comma)), spec.presentation.generators());
    terms.push_back({{where->first, where->second, g}, checked_mul(sign, k)});
    i = close + 1;
    first = false;
  }
  return canonicalize(Chain(*dim, std::move(terms)), complex.oracle());
}

std::string format_chain(const Chain& chain, const CellComplex& complex) {
  if (chain.is_zero()) return "0";
  const auto& spec = complex.spec();
  std::string out;
  bool first = true;
  for (const auto& t : chain.terms()) {
    const Coeff mag = t.coeff < 0 ? -t.coeff : t.coeff;
    if (first) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    if (mag != 1) out += std::to_string(mag) + "*";
    out += "(" + format_word(t.cell.g, spec.presentation.generators()) + ", " +
           spec.cells[t.cell.dim][t.cell.base].id + ")";
    first = false;
  }
  return out;
}

DeltaTable parse_delta_table(std::string_view text) {
  DeltaTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto comma = s.find(',');
    const auto bad = [&] {
      return ParseError("delta table line " + std::to_string(line_no) +
                        ": expected n,value");
    };
    if (comma == std::string::npos) throw bad();
    const std::string a = trim(s.substr(0, comma));
    const std::string b = trim(s.substr(comma + 1));
    int n = 0;
    Coeff v = 0;
    const auto r1 = std::from_chars(a.data(), a.data() + a.size(), n);
    const auto r2 = std::from_chars(b.data(), b.data() + b.size(), v);
    const bool ok = r1.ec == std::errc() && r1.ptr == a.data() + a.size() &&
                    r2.ec == std::errc() && r2.ptr == b.data() + b.size();
    if (!ok) {
      if (table.empty() && line_no == 1) continue;  // header
      throw bad();
    }
    if (n < 0 || v < 0) throw InputError("delta table entries must be nonnegative");
    if (!table.emplace(n, v).second) {
      throw InputError("delta table lists " + std::to_string(n) + " twice");
    }
  }
  return table;
}

DeltaTable read_delta_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_delta_table(buf.str());
}

const char* table_kind_name(TableKind kind) {
  switch (kind) {
    case TableKind::kFV:
      return "FV";
    case TableKind::kPsi:
      return "Psi";
    case TableKind::kPhi:
      return "Phi";
    case TableKind::kFinitePhi:
      return "FinitePhi";
    case TableKind::kChain2Bound:
      return "Chain2Bound";
    case TableKind::kDiskBound:
      return "DiskBound";
  }
  return "?";
}

json budget_to_json(const Budget& budget) {
  return {{"max_fill_volume", budget.max_fill_volume},
          {"max_nodes", budget.max_nodes}};
}

json entry_to_json(const ProfileEntry& entry, const CellComplex* complex) {
  json out = {{"value", entry.value}};
  if (!entry.partition.empty()) out["partition"] = entry.partition;
  if (complex && !entry.witnesses.empty()) {
    json ws = json::array();
    for (const auto& [cycle, filling] : entry.witnesses) {
      ws.push_back({{"cycle", format_chain(cycle, *complex)},
                    {"volume", filling.volume},
                    {"filling", format_chain(filling.witness, *complex)}});
    }
    out["witnesses"] = ws;
  }
  return out;
}

nlohmann::ordered_json table_to_json(const ProfileTable& table,
                                     const CellComplex* complex) {
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::object();
  for (const auto& [n, entry] : table.entries) {
    values[std::to_string(n)] = entry.value;
    if (entry.witnesses.empty() && entry.partition.empty()) continue;
    json e = entry_to_json(entry, complex);
    e.erase("value");
    witnesses[std::to_string(n)] = e;
  }
  nlohmann::ordered_json out;
  out["kind"] = table_kind_name(table.kind);
  out["fingerprint"] = table.fingerprint;
  out["budget"] = budget_to_json(table.budget);
  out["values"] = values;
  out["witnesses"] = witnesses;
  return out;
}

std::string table_to_csv(const ProfileTable& table) {
  std::string out = "n,value\n";
  for (const auto& [n, entry] : table.entries) {
    out += std::to_string(n) + "," + std::to_string(entry.value) + "\n";
  }
  return out;
}

}  // namespace isoprofile
