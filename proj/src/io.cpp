#include "dser/io.hpp"

namespace dser {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t index_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) bad(std::string("\"") + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

std::size_t unsigned_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) bad(std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

bool bool_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) bad(std::string("\"") + key + "\" must be a boolean");
  return v.get<bool>();
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) bad(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Vector vector_from_json(const Ring& r, const Json& j, std::size_t len) {
  if (!j.is_array() || j.size() != len) bad("expected a vector of length " + std::to_string(len));
  Vector out;
  for (const auto& x : j) out.push_back(scalar_from_json(r, x));
  return out;
}

// Order-0 s-orders are written as integers; zero has no finite order.
Json order_json(int k) { return k == kInfiniteOrder ? Json(nullptr) : Json(k); }
int order_from_json(const Json& j) {
  if (j.is_null()) return kInfiniteOrder;
  if (!j.is_number_integer()) bad("\"min_s_order\" must be an integer or null");
  return j.get<int>();
}

DilationCase case_from_name(const std::string& name) {
  for (auto c : {DilationCase::Trivial, DilationCase::SameKindDistinct, DilationCase::SameKindSameIndex,
                 DilationCase::MixedDistinct, DilationCase::MixedSameIndex})
    if (dilation_case_name(c) == name) return c;
  bad("unknown dilation case \"" + name + "\"");
}

}  // namespace

std::string direction_name(Direction d) { return d == Direction::ToP ? "alpha" : "beta_star"; }

Direction direction_from_name(const std::string& name) {
  if (name == "alpha") return Direction::ToP;
  if (name == "beta_star") return Direction::ToPDual;
  bad("unknown direction \"" + name + "\"");
}

Json to_json(const Scalar& x) { return x.to_string(); }

Scalar scalar_from_json(const Ring& r, const Json& j) {
  if (j.is_string()) return Scalar::parse(r, j.get<std::string>());
  if (j.is_number_integer()) return Scalar(r, j.get<long>());
  bad("scalar must be a string or an integer");
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Ring& r, const Json& j) {
  if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.front().size()) bad("matrix rows must be arrays of equal length");
    std::vector<Scalar> out;
    for (const auto& x : row) out.push_back(scalar_from_json(r, x));
    rows.push_back(std::move(out));
  }
  return Matrix::from_rows(r, rows);
}

Json to_json(const AmbientSpace& s) {
  Json j;
  j["ring"] = s.ring().descriptor();
  j["gram"] = to_json(s.phi());
  j["hyperbolic_rank"] = s.m();
  return j;
}

SpacePtr space_from_json(const Json& j) {
  const Ring& r = Ring::parse(string_field(j, "ring"));
  Matrix gram = matrix_from_json(r, field(j, "gram"));
  return ambient(QuadraticSpace::make(gram), index_field(j, "hyperbolic_rank"));
}

Json to_json(const HomMatrix& h) {
  Json j;
  j["dir"] = direction_name(h.dir);
  j["entries"] = to_json(h.entries);
  return j;
}

HomMatrix hom_from_json(const AmbientSpace& s, const Json& j) {
  HomMatrix h{direction_from_name(string_field(j, "dir")), matrix_from_json(s.ring(), field(j, "entries"))};
  if (h.entries.rows() != s.m() || h.entries.cols() != s.n())
    bad("hom must be " + std::to_string(s.m()) + "x" + std::to_string(s.n()));
  return h;
}

Json to_json(const Word& w) {
  Json out = Json::array();
  for (const auto& f : w.factors()) {
    Json j;
    if (const auto* m = std::get_if<OrthMatrix>(&f.item)) {
      j["kind"] = "Matrix";
      j["matrix"] = to_json(m->matrix());
    } else {
      const Generator& g = std::get<Generator>(f.item);
      j["kind"] = generator_kind_name(g);
      if (const auto* c = std::get_if<CoordGen>(&g)) {
        j["i"] = c->i;
        j["j"] = c->j;
        j["y"] = to_json(c->y);
      } else if (const auto* full = std::get_if<FullGen>(&g)) {
        j["hom"] = to_json(full->hom.entries);
      } else if (const auto* e = std::get_if<EichlerGen>(&g)) {
        j["u"] = vector_json(e->u);
        j["v"] = vector_json(e->v);
        j["r"] = to_json(e->r);
      } else {
        const auto& b = std::get<BassGen>(g);
        j["p0"] = vector_json(b.p0);
        j["a0"] = to_json(b.a0);
        j["w0"] = vector_json(b.w0);
      }
    }
    j["exp"] = f.exp;
    out.push_back(std::move(j));
  }
  return out;
}

Word word_from_json(const SpacePtr& s, const Json& j) {
  if (!j.is_array()) bad("word must be an array of factors");
  const Ring& r = s->ring();
  Word w(s);
  for (const auto& f : j) {
    std::string kind = string_field(f, "kind");
    int exp = f.contains("exp") ? int_field(f, "exp") : 1;
    if (exp != 1 && exp != -1) bad("\"exp\" must be 1 or -1");
    if (kind == "CoordAlpha" || kind == "CoordBetaStar") {
      Direction d = kind == "CoordAlpha" ? Direction::ToP : Direction::ToPDual;
      std::size_t i = index_field(f, "i"), jj = index_field(f, "j");
      if (i > s->m() || jj > s->n()) bad("coordinate index out of range");
      w.push(CoordGen{d, i, jj, scalar_from_json(r, field(f, "y"))}, exp);
    } else if (kind == "FullAlpha" || kind == "FullBetaStar") {
      Json h{{"dir", kind == "FullAlpha" ? "alpha" : "beta_star"}, {"entries", field(f, "hom")}};
      w.push(FullGen{hom_from_json(*s, h)}, exp);
    } else if (kind == "Eichler") {
      w.push(EichlerGen{vector_from_json(r, field(f, "u"), s->dim()), vector_from_json(r, field(f, "v"), s->dim()),
                        scalar_from_json(r, field(f, "r"))},
             exp);
    } else if (kind == "BassTransvection") {
      w.push(BassGen{vector_from_json(r, field(f, "p0"), s->dim()), scalar_from_json(r, field(f, "a0")),
                     vector_from_json(r, field(f, "w0"), s->dim())},
             exp);
    } else if (kind == "Matrix") {
      Matrix m = matrix_from_json(r, field(f, "matrix"));
      if (m.rows() != s->dim() || m.cols() != s->dim()) bad("matrix factor has the wrong size");
      w.push(OrthMatrix::certify(s, m), exp);
    } else {
      bad("unknown factor kind \"" + kind + "\"");
    }
  }
  return w;
}

Json to_json(const DilationInput& in) {
  Json j;
  j["a"] = to_json(in.a);
  j["r"] = in.r;
  j["kind_x"] = direction_name(in.kind_x);
  j["i"] = in.i;
  j["j"] = in.j;
  j["kind_y"] = direction_name(in.kind_y);
  j["k"] = in.k;
  j["l"] = in.l;
  j["x"] = to_json(in.x);
  j["d"] = in.d;
  return j;
}

DilationInput dilation_input_from_json(const Ring& r, const Json& j) {
  DilationInput in;
  in.a = scalar_from_json(r, field(j, "a"));
  in.r = int_field(j, "r");
  in.kind_x = direction_from_name(string_field(j, "kind_x"));
  in.i = index_field(j, "i");
  in.j = index_field(j, "j");
  in.kind_y = direction_from_name(string_field(j, "kind_y"));
  in.k = index_field(j, "k");
  in.l = index_field(j, "l");
  in.x = scalar_from_json(r, field(j, "x"));
  in.d = int_field(j, "d");
  return in;
}

Json to_json(const DilationWitness& w) {
  Json j;
  j["input"] = to_json(w.input);
  j["case"] = dilation_case_name(w.dcase);
  j["d"] = w.d;
  j["word"] = to_json(w.word);
  j["min_s_order"] = order_json(w.min_s_order);
  j["verified"] = w.verified;
  return j;
}

DilationWitness witness_from_json(const SpacePtr& s, const Json& j) {
  DilationInput in = dilation_input_from_json(s->ring(), field(j, "input"));
  DilationCase c = j.contains("case") ? case_from_name(string_field(j, "case")) : DilationCase::Trivial;
  return DilationWitness{in, c, int_field(j, "d"), word_from_json(s, field(j, "word")), order_from_json(field(j, "min_s_order")),
                         bool_field(j, "verified")};
}

std::vector<Share> shares_from_json(const Ring& r, const Json& j) {
  if (!j.is_array() || j.empty()) bad("shares must be a non-empty array");
  std::vector<Share> out;
  for (const auto& sh : j) out.push_back(Share{scalar_from_json(r, field(sh, "d")), scalar_from_json(r, field(sh, "b"))});
  return out;
}

Json to_json(const std::vector<Share>& shares) {
  Json out = Json::array();
  for (const auto& sh : shares) out.push_back(Json{{"d", to_json(sh.d)}, {"b", to_json(sh.b)}});
  return out;
}

Json to_json(const IdentityReport& r) {
  Json j;
  j["id"] = r.id;
  j["case"] = r.case_index;
  j["space"] = r.space;
  j["seed"] = r.seed;
  j["verdict"] = r.measurement ? "measured" : (r.equal ? "equal" : "violated");
  j["equal"] = r.equal;
  j["lhs_digest"] = r.lhs_digest;
  j["rhs_digest"] = r.rhs_digest;
  if (r.witness) j["witness"] = Json{{"row", r.witness->row}, {"col", r.witness->col}, {"lhs", r.witness->lhs}, {"rhs", r.witness->rhs}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

IdentityReport report_from_json(const Json& j) {
  IdentityReport r;
  r.id = string_field(j, "id");
  r.case_index = unsigned_field(j, "case");
  r.space = string_field(j, "space");
  r.seed = unsigned_field(j, "seed");
  std::string verdict = string_field(j, "verdict");
  if (verdict != "equal" && verdict != "violated" && verdict != "measured") bad("unknown verdict \"" + verdict + "\"");
  r.measurement = verdict == "measured";
  r.equal = bool_field(j, "equal");
  r.lhs_digest = string_field(j, "lhs_digest");
  r.rhs_digest = string_field(j, "rhs_digest");
  if (j.contains("witness")) {
    const Json& w = j["witness"];
    r.witness = Witness{unsigned_field(w, "row"), unsigned_field(w, "col"), string_field(w, "lhs"), string_field(w, "rhs")};
  }
  if (j.contains("note")) r.note = string_field(j, "note");
  return r;
}

}  // namespace dser
