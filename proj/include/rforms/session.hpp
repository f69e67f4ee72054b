#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>

#include "rforms/zspace.hpp"

namespace rforms {

struct Token {
  std::string text;
  std::size_t column = 1;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& line)
{
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#')
      break;
    Token t;
    t.column = i + 1;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#')
      t.text += line[i++];
    out.push_back(std::move(t));
  }
  return out;
}

class CommandError : public std::runtime_error {
public:
  std::size_t column;
  CommandError(std::size_t col, const std::string& what) : std::runtime_error(what), column(col) {}
};

/// Command interpreter state.  Every command writes only to the given
/// stream; nothing depends on timing unless verbose is set.
class Session {
public:
  explicit Session(std::ostream& out, unsigned threads = 1, bool verbose = false)
      : out_(out), threads_(threads), verbose_(verbose)
  {
  }

  /// returns false when the session should end
  bool execute(const std::string& line, std::size_t line_no)
  {
    history_.push_back(line);
    std::vector<Token> toks = tokenize(line);
    if (toks.empty())
      return true;
    auto start = std::chrono::steady_clock::now();
    try {
      if (!dispatch(toks))
        return false;
    } catch (const CommandError& e) {
      ++errors_;
      out_ << "error (line " << line_no << ", column " << e.column << "): " << e.what() << '\n';
    } catch (const std::exception& e) {
      ++errors_;
      out_ << "error (line " << line_no << ", column " << toks[0].column << "): " << e.what() << '\n';
    }
    if (verbose_) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      out_ << "[" << toks[0].text << ": " << ms.count() << " ms]\n";
    }
    return true;
  }

  int run(std::istream& in)
  {
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line))
      if (!execute(line, ++n))
        break;
    out_.flush();
    return errors_ ? 1 : 0;
  }

  std::size_t errors() const { return errors_; }
  const std::vector<std::string>& history() const { return history_; }

private:
  bool dispatch(const std::vector<Token>& t)
  {
    const std::string& c = t[0].text;
    if (c == "quit" || c == "exit") {
      arity(t, 0, 0);
      return false;
    }
    if (c == "type")
      cmd_type(t);
    else if (c == "inner")
      cmd_inner(t);
    else if (c == "strongreal")
      cmd_strongreal(t);
    else if (c == "cartan")
      cmd_cartan(t);
    else if (c == "kgb")
      cmd_kgb(t);
    else if (c == "X")
      cmd_X(t);
    else if (c == "block")
      cmd_block(t);
    else if (c == "count-z")
      cmd_count_z(t);
    else if (c == "realweyl")
      cmd_realweyl(t);
    else if (c == "dual")
      cmd_dual(t);
    else if (c == "dot")
      cmd_dot(t);
    else if (c == "reduced")
      cmd_reduced(t);
    else if (c == "help")
      cmd_help(t);
    else
      throw CommandError(t[0].column, "unknown command '" + c + "' (try 'help')");
    return true;
  }

  static void arity(const std::vector<Token>& t, std::size_t lo, std::size_t hi)
  {
    std::size_t n = t.size() - 1;
    if (n < lo) {
      std::size_t col = t.back().column + t.back().text.size();
      throw CommandError(col, "'" + t[0].text + "' expects " + std::to_string(lo) + " argument(s)");
    }
    if (n > hi)
      throw CommandError(t[hi + 1].column, "unexpected argument '" + t[hi + 1].text + "'");
  }
  static std::size_t number(const Token& tok)
  {
    if (tok.text.empty() || !std::all_of(tok.text.begin(), tok.text.end(), ::isdigit))
      throw CommandError(tok.column, "expected a number, got '" + tok.text + "'");
    try {
      return std::stoul(tok.text);
    } catch (const std::exception&) {
      throw CommandError(tok.column, "number out of range '" + tok.text + "'");
    }
  }

  void need_type(const std::string& cmd) const
  {
    if (!rd_)
      throw std::runtime_error(cmd + ": no group; run 'type' first");
  }
  void need_inner(const std::string& cmd) const
  {
    if (!ic_)
      throw std::runtime_error(cmd + ": no inner class; run 'inner' first");
  }
  const KGBSpace& space()
  {
    if (!X_)
      X_ = std::make_unique<KGBSpace>(*ic_, KGBOptions{std::nullopt, true, threads_});
    return *X_;
  }
  const KGBTable& table()
  {
    if (!table_)
      table_ = std::make_unique<KGBTable>(enumerate_X(space()));
    return *table_;
  }
  void reset_inner()
  {
    table_.reset();
    X_.reset();
    Z_.reset();
    dual_table_.reset();
    ic_.reset();
  }

  void cmd_type(const std::vector<Token>& t)
  {
    arity(t, 1, 2);
    Isogeny iso = Isogeny::sc;
    if (t.size() == 3) {
      if (t[2].text == "sc")
        iso = Isogeny::sc;
      else if (t[2].text == "ad")
        iso = Isogeny::ad;
      else
        throw CommandError(t[2].column, "isogeny must be 'sc' or 'ad'");
    }
    RootDatum rd;
    try {
      rd = from_type(t[1].text, iso);
    } catch (const std::exception& e) {
      throw CommandError(t[1].column, e.what());
    }
    reset_inner();
    rd_ = std::make_unique<RootDatum>(rd);
    label_ = t[1].text + (iso == Isogeny::sc ? " sc" : " ad");
    WeylGroup W(rd.cartan_matrix());
    out_ << "group " << label_ << ": rank " << rd.rank() << ", semisimple rank " << rd.semisimple_rank()
         << ", " << rd.num_pos() << " positive roots, |W| = " << W.order() << '\n';
    print_center();
  }

  void print_center()
  {
    CenterTorsion ct = center_torsion(*rd_);
    out_ << "center: ";
    bool any = false;
    for (auto d : ct.invariant_factors)
      if (d > 1) {
        out_ << (any ? " x " : "") << "Z/" << d;
        any = true;
      }
    if (ct.torus_dim) {
      out_ << (any ? " x " : "") << "torus of dimension " << ct.torus_dim;
      any = true;
    }
    out_ << (any ? "" : "trivial") << '\n';
  }

  void cmd_inner(const std::vector<Token>& t)
  {
    arity(t, 1, 1);
    need_type("inner");
    InnerClass ic;
    try {
      ic = make_inner_class(*rd_, t[1].text);
    } catch (const std::exception& e) {
      throw CommandError(t[1].column, e.what());
    }
    reset_inner();
    ic_ = std::make_unique<InnerClass>(std::move(ic));
    describe_inner();
  }

  void describe_inner()
  {
    TwistedInvolutions ti(*ic_);
    out_ << "inner class of " << label_ << ": diagram twist [";
    for (std::size_t i = 0; i < ic_->diagram_perm().size(); ++i)
      out_ << (i ? "," : "") << ic_->diagram_perm()[i] + 1;
    out_ << "], " << (ic_->is_equal_rank() ? "equal rank" : "unequal rank") << ", " << ti.size()
         << " twisted involutions, " << ti.classes().size() << " Cartan classes\n";
  }

  void cmd_strongreal(const std::vector<Token>& t)
  {
    arity(t, 0, 0);
    need_inner("strongreal");
    const KGBSpace& X = space();
    const KGBTable& tab = table();
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < tab.rows.size(); ++i)
      local[tab.rows[i].global] = i;
    auto forms = strong_real_forms(X);
    out_ << forms.size() << " strong real forms (quasisplit last):\n";
    for (auto& f : forms) {
      out_ << f.index << ": x^2 = " << f.square.str() << ", |X[x]| = " << f.size << ", base fiber {";
      for (std::size_t k = 0; k < f.base_elements.size(); ++k)
        out_ << (k ? "," : "") << local.at(f.base_elements[k]);
      out_ << "}" << (f.quasisplit ? ", quasisplit" : "") << '\n';
    }
  }

  void cmd_cartan(const std::vector<Token>& t)
  {
    arity(t, 0, 0);
    need_inner("cartan");
    const KGBSpace& X = space();
    const TwistedInvolutions& ti = X.twisted_involutions();
    for (auto& c : cartan_classes(X)) {
      const RootClassification& rc = X.classification(c.representative);
      out_ << c.cartan_class << ": tau = " << (ti[c.representative].w.is_identity() ? "e" : ti[c.representative].w.str())
           << ", class size " << ti.classes()[c.cartan_class].size() << ", signature " << c.signature.str()
           << " " << c.signature.name() << ", imaginary " << rc.pos_imaginary.size() << ", real "
           << rc.pos_real.size() << ", complex " << rc.pos_complex.size() << '\n';
    }
  }

  std::size_t form_arg(const Token& tok)
  {
    std::size_t f = number(tok);
    if (f >= space().forms().size())
      throw CommandError(tok.column, "no strong real form " + tok.text + " (there are " +
                                         std::to_string(space().forms().size()) + ")");
    return f;
  }

  void cmd_kgb(const std::vector<Token>& t)
  {
    arity(t, 1, 1);
    need_inner("kgb");
    std::size_t f = form_arg(t[1]);
    out_ << enumerate_form(space(), f).text();
  }

  void cmd_X(const std::vector<Token>& t)
  {
    arity(t, 0, 0);
    need_inner("X");
    out_ << table().text();
  }

  const ZSpace& zspace()
  {
    if (!Z_) {
      Z_ = std::make_unique<ZSpace>(*ic_, std::nullopt, std::nullopt, true, threads_);
      dual_table_ = std::make_unique<KGBTable>(enumerate_X(Z_->Y()));
    }
    return *Z_;
  }

  void cmd_block(const std::vector<Token>& t)
  {
    arity(t, 1, 2);
    need_inner("block");
    std::size_t f = form_arg(t[1]);
    std::optional<RatVecModZ> ysq;
    const ZSpace& Z = zspace();
    if (t.size() == 3) {
      try {
        ysq = parse_square(Z.dual_inner_class().rd(), t[2].text);
      } catch (const std::exception& e) {
        throw CommandError(t[2].column, e.what());
      }
    }
    if (!rho_in_lattice(ic_->rd()))
      out_ << "note: rho is not in X, so pairs index representations of the rho-cover\n";
    KGBTable xt = enumerate_form(Z.X(), f);
    std::map<std::size_t, std::size_t> xl, yl;
    for (std::size_t i = 0; i < xt.rows.size(); ++i)
      xl[xt.rows[i].global] = i;
    for (std::size_t i = 0; i < dual_table_->rows.size(); ++i)
      yl[dual_table_->rows[i].global] = i;
    std::vector<std::tuple<std::size_t, std::size_t, const ZPair*>> rows;
    for (auto& p : Z.pairs()) {
      if (Z.X().form_of(p.x) != f || (ysq && !(p.y_square == *ysq)))
        continue;
      rows.emplace_back(xl.at(p.x), yl.at(p.y), &p);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (auto& [x, y, p] : rows) {
      const WeylElt& w = Z.X().tau_word(p->x);
      out_ << x << "  " << y << "  " << p->x_square.str() << "  " << p->y_square.str() << "  "
           << (w.is_identity() ? "e" : w.str()) << '\n';
    }
    out_ << rows.size() << " pairs\n";
  }

  void cmd_count_z(const std::vector<Token>& t)
  {
    if (t.size() != 1 && t.size() != 3)
      throw CommandError(t.size() > 1 ? t[1].column : t[0].column + t[0].text.size(),
                         "'count-z' expects no arguments or two squares");
    need_inner("count-z");
    std::optional<RatVecModZ> xsq, ysq;
    if (t.size() == 3) {
      InnerClass dic = ic_->dual();
      try {
        xsq = parse_square(ic_->rd(), t[1].text);
      } catch (const std::exception& e) {
        throw CommandError(t[1].column, e.what());
      }
      try {
        ysq = parse_square(dic.rd(), t[2].text);
      } catch (const std::exception& e) {
        throw CommandError(t[2].column, e.what());
      }
    }
    auto blocks = count_Z_blocks(*ic_, xsq, ysq, threads_);
    if (!rho_in_lattice(ic_->rd()))
      out_ << "note: rho is not in X, so these count representations of the rho-cover\n";
    TwistedInvolutions ti(*ic_);
    InnerClass dic = ic_->dual();
    TwistedInvolutions dti(dic);
    std::size_t total = 0;
    for (auto& b : blocks) {
      if (!b.size())
        continue;
      out_ << "tau " << (ti[b.tau].w.is_identity() ? "e" : ti[b.tau].w.str()) << "  dual "
           << (dti[b.dual_tau].w.is_identity() ? "e" : dti[b.dual_tau].w.str()) << "  " << b.nx << " x "
           << b.ny << " = " << b.size() << '\n';
      total += b.size();
    }
    out_ << total << '\n';
  }

  void cmd_realweyl(const std::vector<Token>& t)
  {
    arity(t, 1, 1);
    need_inner("realweyl");
    std::size_t i = number(t[1]);
    const KGBTable& tab = table();
    if (i >= tab.rows.size())
      throw CommandError(t[1].column, "no element " + t[1].text + " in X");
    RealWeylReport r = real_weyl(space(), tab.rows[i].global);
    out_ << "element " << i << ": |W(K,H)| = " << r.order << " = " << r.complex_part << " (complex) * "
         << r.imaginary_part << " (imaginary, of " << r.W_i_order << ") * " << r.real_part
         << " (real); cross orbit " << r.orbit_size << '\n';
  }

  void cmd_dual(const std::vector<Token>& t)
  {
    arity(t, 0, 0);
    need_inner("dual");
    InnerClass d = ic_->dual();
    reset_inner();
    rd_ = std::make_unique<RootDatum>(d.rd());
    label_ = "dual of " + label_;
    ic_ = std::make_unique<InnerClass>(std::move(d));
    describe_inner();
    print_center();
  }

  void cmd_dot(const std::vector<Token>& t)
  {
    arity(t, 2, 2);
    need_inner("dot");
    KGBTable tab;
    if (t[1].text == "X")
      tab = table();
    else
      tab = enumerate_form(space(), form_arg(t[1]));
    std::ofstream f(t[2].text);
    if (!f)
      throw CommandError(t[2].column, "cannot write '" + t[2].text + "'");
    f << tab.dot();
    out_ << "wrote " << tab.rows.size() << " vertices\n";
  }

  void cmd_reduced(const std::vector<Token>& t)
  {
    arity(t, 0, 0);
    need_inner("reduced");
    ReducedSpace r = reduced_space(*ic_);
    out_ << "Z^Gamma has " << r.fixed_center.size() << " elements; Z0 =";
    for (std::size_t i = 0; i < r.Z0.size(); ++i)
      out_ << " " << r.Z0[i].str() << "[" << r.slice_sizes[i] << "]";
    out_ << '\n';
  }

  void cmd_help(const std::vector<Token>& t)
  {
    arity(t, 0, 0);
    out_ << "type <T> [sc|ad]      choose a root datum, e.g. 'type C2 sc'\n"
            "inner <c|u|perm>      choose the inner class, perm like '2,1'\n"
            "strongreal            list strong real forms\n"
            "cartan                list Cartan classes\n"
            "kgb <form>            the space X[x] of one strong real form\n"
            "X                     the whole space X\n"
            "block <form> [y2]     pairs (x,y) of Z with x in the form\n"
            "count-z [x2 y2]       block sizes of Z; squares are 1, -1, * or (a,...)\n"
            "realweyl <id>         real Weyl group of an element of X\n"
            "reduced               the reduced parameter space\n"
            "dual                  pass to the dual inner class\n"
            "dot <form|X> <path>   write the cross/Cayley graph\n"
            "quit\n";
  }

  std::ostream& out_;
  unsigned threads_;
  bool verbose_;
  std::size_t errors_ = 0;
  std::vector<std::string> history_;
  std::string label_;
  std::unique_ptr<RootDatum> rd_;
  std::unique_ptr<InnerClass> ic_;
  std::unique_ptr<KGBSpace> X_;
  std::unique_ptr<KGBTable> table_;
  std::unique_ptr<ZSpace> Z_;
  std::unique_ptr<KGBTable> dual_table_;
};

} // namespace rforms
