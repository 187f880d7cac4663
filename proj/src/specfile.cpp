#include "pn/specfile.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pn/parse.hpp"

namespace pn {

namespace {

bool is_space_char(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Cursor over one logical line; all positions are byte offsets into the
// line, reported 1-based.
struct LineCursor {
  std::string text;
  int lineno = 0;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw SpecFileError(msg, lineno, static_cast<int>(at) + 1);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos); }

  void skip_ws() {
    while (pos < text.size() && is_space_char(text[pos])) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  // Run of non-whitespace characters.
  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !is_space_char(text[pos])) ++pos;
    if (start == pos) fail("expected a token");
    return text.substr(start, pos - start);
  }
  // Run of digits; stops at any non-digit (':' included).
  int read_uint(const char* what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail(std::string("expected ") + what);
    try {
      return std::stoi(text.substr(start, pos - start));
    } catch (const std::exception&) {
      fail(std::string(what) + " out of range", start);
    }
  }
  std::size_t next_token_start() {
    skip_ws();
    return pos;
  }
};

int parse_positive_int(LineCursor& cur, const std::string& tok, std::size_t at, const char* what) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    cur.fail(std::string("expected ") + what + ", got '" + tok + "'", at);
  }
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    cur.fail(std::string(what) + " out of range", at);
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// key=value option; returns false when the token has no '='.
bool split_option(const std::string& tok, std::string& key, std::string& value) {
  auto eq = tok.find('=');
  if (eq == std::string::npos) return false;
  key = tok.substr(0, eq);
  value = tok.substr(eq + 1);
  return true;
}

struct Builder {
  SpecFile file;

  enum class Block { None, Biv, Endo, Vec };
  Block block = Block::None;
  std::size_t block_index = 0;
  std::vector<std::pair<int, int>> seen_pairs;  // duplicate guards for the open block
  std::vector<int> seen_indices;

  const ChartPtr& block_chart() const {
    switch (block) {
      case Block::Biv: return file.bivectors[block_index].value.space();
      case Block::Endo: return file.endos[block_index].value.space();
      default: return file.vectors[block_index].value.space();
    }
  }

  void require_fresh_name(LineCursor& cur, const std::string& kind, const std::string& name,
                          std::size_t at) {
    bool dup = false;
    if (kind == "space") dup = file.find_space(name) != nullptr;
    if (kind == "bivector") dup = file.find_bivector(name) != nullptr;
    if (kind == "endo") dup = file.find_endo(name) != nullptr;
    if (kind == "vector") {
      dup = std::any_of(file.vectors.begin(), file.vectors.end(),
                        [&name](const auto& v) { return v.name == name; });
    }
    if (dup) cur.fail("duplicate " + kind + " name '" + name + "'", at);
  }

  ChartPtr resolve_space(LineCursor& cur, const std::string& name, std::size_t at) {
    const SpecFile::Space* s = file.find_space(name);
    if (!s) cur.fail("unknown space '" + name + "'", at);
    return s->chart;
  }

  void open_tensor(LineCursor& cur, const std::string& kind) {
    std::size_t name_at = cur.next_token_start();
    std::string name = cur.token();
    if (!valid_identifier(name)) cur.fail("invalid name '" + name + "'", name_at);
    require_fresh_name(cur, kind, name, name_at);
    std::size_t on_at = cur.next_token_start();
    if (cur.token() != "on") cur.fail("expected 'on'", on_at);
    std::size_t sp_at = cur.next_token_start();
    std::string space = cur.token();
    ChartPtr chart = resolve_space(cur, space, sp_at);
    if (!cur.at_end()) cur.fail("unexpected trailing input");

    seen_pairs.clear();
    seen_indices.clear();
    if (kind == "bivector") {
      file.bivectors.push_back({name, space, Bivector(chart)});
      block = Block::Biv;
      block_index = file.bivectors.size() - 1;
    } else if (kind == "endo") {
      file.endos.push_back({name, space, EndoField(chart)});
      block = Block::Endo;
      block_index = file.endos.size() - 1;
    } else {
      file.vectors.push_back({name, space, VectorField(chart)});
      block = Block::Vec;
      block_index = file.vectors.size() - 1;
    }
  }

  void component_line(LineCursor& cur) {
    if (block == Block::None) cur.fail("component line outside a tensor block");
    const ChartPtr& chart = block_chart();
    int dim = chart->dim();

    std::size_t i_at = cur.next_token_start();
    int i = cur.read_uint("a component index");

    int j = -1;
    std::size_t j_at = i_at;
    bool two_indices = block != Block::Vec;
    if (two_indices) {
      j_at = cur.next_token_start();
      j = cur.read_uint("a component index");
    }

    cur.skip_ws();
    if (cur.pos >= cur.text.size() || cur.text[cur.pos] != ':') cur.fail("expected ':'");
    ++cur.pos;
    cur.skip_ws();
    std::size_t expr_at = cur.pos;
    std::string expr = cur.text.substr(expr_at);
    if (expr.empty()) cur.fail("expected an expression");

    Poly value(chart);
    try {
      value = parse_expr(expr, chart);
    } catch (const ParseError& e) {
      cur.fail(e.what(), expr_at + e.pos);
    }

    if (block == Block::Vec) {
      if (i < 1 || i > dim) cur.fail("index out of range for dimension " + std::to_string(dim), i_at);
      if (std::count(seen_indices.begin(), seen_indices.end(), i) > 0) {
        cur.fail("duplicate component " + std::to_string(i), i_at);
      }
      seen_indices.push_back(i);
      file.vectors[block_index].value.set_component(i - 1, std::move(value));
      return;
    }

    if (i < 1 || i > dim || j < 1 || j > dim) {
      cur.fail("index out of range for dimension " + std::to_string(dim),
               (i < 1 || i > dim) ? i_at : j_at);
    }
    if (block == Block::Biv && i >= j) {
      cur.fail("bivector components require i < j (use the sign for the mirror entry)", i_at);
    }
    if (std::count(seen_pairs.begin(), seen_pairs.end(), std::make_pair(i, j)) > 0) {
      cur.fail("duplicate component " + std::to_string(i) + " " + std::to_string(j), i_at);
    }
    seen_pairs.emplace_back(i, j);
    if (block == Block::Biv) {
      file.bivectors[block_index].value.set_component(i - 1, j - 1, std::move(value));
    } else {
      file.endos[block_index].value.set_entry(i - 1, j - 1, std::move(value));
    }
  }

  void space_line(LineCursor& cur) {
    std::size_t name_at = cur.next_token_start();
    std::string name = cur.token();
    if (!valid_identifier(name)) cur.fail("invalid space name '" + name + "'", name_at);
    require_fresh_name(cur, "space", name, name_at);

    std::optional<int> dim;
    std::vector<std::string> coords;
    while (!cur.at_end()) {
      std::size_t at = cur.next_token_start();
      std::string tok = cur.token();
      std::string key, value;
      if (!split_option(tok, key, value)) cur.fail("expected key=value, got '" + tok + "'", at);
      if (key == "dim") {
        dim = parse_positive_int(cur, value, at, "a dimension");
      } else if (key == "coords") {
        coords = split_commas(value);
      } else {
        cur.fail("unknown option '" + key + "'", at);
      }
    }
    if (!dim) cur.fail("space requires dim=<n>");
    if (coords.empty()) cur.fail("space requires coords=<c1,...,cn>");
    if (static_cast<int>(coords.size()) != *dim) {
      cur.fail("dim=" + std::to_string(*dim) + " but " + std::to_string(coords.size()) +
               " coordinates given");
    }
    ChartPtr chart;
    try {
      chart = ChartSpace::create(coords);
    } catch (const Error& e) {
      cur.fail(e.what());
    }
    file.spaces.push_back({name, chart});
    block = Block::None;
  }

  void check_line(LineCursor& cur) {
    std::size_t kind_at = cur.next_token_start();
    std::string kind = cur.token();
    CheckRequest req;
    if (kind == "algebroid") {
      req.kind = CheckRequest::Kind::Algebroid;
    } else if (kind == "groupoid") {
      req.kind = CheckRequest::Kind::Groupoid;
    } else if (kind == "correspondence") {
      req.kind = CheckRequest::Kind::Correspondence;
    } else if (kind == "oracle") {
      req.kind = CheckRequest::Kind::Oracle;
    } else {
      cur.fail("unknown check '" + kind + "'", kind_at);
    }

    if (req.kind != CheckRequest::Kind::Oracle) {
      std::size_t b_at = cur.next_token_start();
      req.bivector = cur.token();
      const auto* b = file.find_bivector(req.bivector);
      if (!b) cur.fail("unknown bivector '" + req.bivector + "'", b_at);
      std::size_t e_at = cur.next_token_start();
      req.endo = cur.token();
      const auto* e = file.find_endo(req.endo);
      if (!e) cur.fail("unknown endo '" + req.endo + "'", e_at);
      if (b->space != e->space) {
        cur.fail("tensors '" + req.bivector + "' and '" + req.endo + "' live on different spaces",
                 e_at);
      }
    }

    while (!cur.at_end()) {
      std::size_t at = cur.next_token_start();
      std::string tok = cur.token();
      std::string key, value;
      if (!split_option(tok, key, value)) cur.fail("expected key=value option, got '" + tok + "'", at);
      if (key == "convention" && req.kind != CheckRequest::Kind::Oracle &&
          req.kind != CheckRequest::Kind::Algebroid) {
        if (value == "right") {
          req.convention = Convention::Right;
        } else if (value == "left") {
          req.convention = Convention::Left;
        } else {
          cur.fail("convention must be right or left", at);
        }
      } else if (key == "trials" && req.kind == CheckRequest::Kind::Oracle) {
        req.trials = parse_positive_int(cur, value, at, "a trial count");
        if (*req.trials < 1) cur.fail("trials must be at least 1", at);
      } else if (key == "seed" && req.kind == CheckRequest::Kind::Oracle) {
        if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) {
              return std::isdigit(static_cast<unsigned char>(c));
            })) {
          cur.fail("seed must be a nonnegative integer", at);
        }
        req.seed = std::stoull(value);
      } else {
        cur.fail("unknown option '" + key + "' for check " + kind, at);
      }
    }
    file.checks.push_back(std::move(req));
    block = Block::None;
  }
};

}  // namespace

const SpecFile::Space* SpecFile::find_space(std::string_view name) const {
  for (const auto& s : spaces) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const SpecFile::NamedBivector* SpecFile::find_bivector(std::string_view name) const {
  for (const auto& b : bivectors) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

const SpecFile::NamedEndo* SpecFile::find_endo(std::string_view name) const {
  for (const auto& e : endos) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

SpecFile parse_specfile(std::string_view text) {
  Builder b;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string line(text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                      : end - start));
    ++lineno;
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;

    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (std::all_of(line.begin(), line.end(), is_space_char)) continue;

    LineCursor cur{line, lineno, 0};
    bool indented = is_space_char(line[0]);
    if (indented) {
      b.component_line(cur);
      continue;
    }

    std::size_t head_at = cur.next_token_start();
    std::string head = cur.token();
    if (head == "space") {
      b.space_line(cur);
    } else if (head == "bivector" || head == "endo" || head == "vector") {
      b.open_tensor(cur, head);
    } else if (head == "check") {
      b.check_line(cur);
    } else {
      cur.fail("unknown directive '" + head + "'", head_at);
    }
  }
  return b.file;
}

namespace {

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string format_specfile(const SpecFile& file) {
  std::ostringstream os;
  for (const auto& s : file.spaces) {
    os << "space " << s.name << " dim=" << s.chart->dim() << " coords=" << join_names(s.chart->names())
       << "\n";
  }
  for (const auto& b : file.bivectors) {
    os << "bivector " << b.name << " on " << b.space << "\n";
    for (int i = 0; i < b.value.dim(); ++i) {
      for (int j = i + 1; j < b.value.dim(); ++j) {
        if (!b.value.component(i, j).is_zero()) {
          os << "  " << i + 1 << " " << j + 1 << ": " << b.value.component(i, j).str() << "\n";
        }
      }
    }
  }
  for (const auto& e : file.endos) {
    os << "endo " << e.name << " on " << e.space << "\n";
    for (int i = 0; i < e.value.dim(); ++i) {
      for (int j = 0; j < e.value.dim(); ++j) {
        if (!e.value.entry(i, j).is_zero()) {
          os << "  " << i + 1 << " " << j + 1 << ": " << e.value.entry(i, j).str() << "\n";
        }
      }
    }
  }
  for (const auto& v : file.vectors) {
    os << "vector " << v.name << " on " << v.space << "\n";
    for (int i = 0; i < v.value.dim(); ++i) {
      if (!v.value.component(i).is_zero()) {
        os << "  " << i + 1 << ": " << v.value.component(i).str() << "\n";
      }
    }
  }
  for (const auto& c : file.checks) {
    os << "check ";
    switch (c.kind) {
      case CheckRequest::Kind::Algebroid:
        os << "algebroid " << c.bivector << " " << c.endo;
        break;
      case CheckRequest::Kind::Groupoid:
        os << "groupoid " << c.bivector << " " << c.endo;
        break;
      case CheckRequest::Kind::Correspondence:
        os << "correspondence " << c.bivector << " " << c.endo;
        break;
      case CheckRequest::Kind::Oracle:
        os << "oracle";
        break;
    }
    if (c.convention) os << " convention=" << convention_name(*c.convention);
    if (c.trials) os << " trials=" << *c.trials;
    if (c.seed) os << " seed=" << *c.seed;
    os << "\n";
  }
  return os.str();
}

}  // namespace pn
