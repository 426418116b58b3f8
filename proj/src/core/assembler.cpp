// Copyright 2026 the svesim authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "assembler.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace svesim {

namespace {

std::string toLower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool isLabelChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '$';
}

bool isValidLabel(const std::string& s) {
  if (s.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), isLabelChar);
}

std::optional<int64_t> parseInt(std::string t) {
  t = trim(t);
  if (t.empty()) return std::nullopt;
  bool neg = false;
  if (t[0] == '-') {
    neg = true;
    t = t.substr(1);
  }
  uint64_t v = 0;
  std::from_chars_result r{};
  if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X'))
    r = std::from_chars(t.data() + 2, t.data() + t.size(), v, 16);
  else
    r = std::from_chars(t.data(), t.data() + t.size(), v, 10);
  if (r.ec != std::errc{} || r.ptr != t.data() + t.size()) return std::nullopt;
  const int64_t sv = static_cast<int64_t>(v);
  return neg ? -sv : sv;
}

std::optional<ElementSize> parseEsize(const std::string& s) {
  if (s == "b") return ElementSize::B;
  if (s == "h") return ElementSize::H;
  if (s == "s") return ElementSize::S;
  if (s == "d") return ElementSize::D;
  return std::nullopt;
}

struct Operand {
  enum class Kind { X, D, Z, P, Imm, Addr, Label, ZIndexed };
  Kind kind = Kind::Label;
  unsigned idx = 0;
  std::optional<ElementSize> es;
  char qual = 0;  // 'z' or 'm' for predicate operands
  int64_t imm = 0;
  AddrExpr addr{};
  std::string label;
  unsigned elemIndex = 0;
};

// Splits on commas that are not inside brackets.
std::vector<std::string> splitOperands(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

class Assembler {
 public:
  AssembleResult run(const std::string& source) {
    pass1(source);
    if (diags_.empty()) pass2();
    if (diags_.empty()) validateMovprfx();
    AssembleResult result;
    result.diagnostics = diags_;
    if (diags_.empty()) result.program = std::move(program_);
    return result;
  }

 private:
  struct PendingInstr {
    int line = 0;
    std::string text;
  };

  Program program_;
  std::vector<Diagnostic> diags_;
  std::vector<PendingInstr> pending_;
  int line_ = 0;

  void error(const std::string& msg, int column = 1) {
    diags_.push_back({line_, column, msg});
  }

  // ---- pass 1: labels, directives, instruction collection ----

  void pass1(const std::string& source) {
    std::istringstream in(source);
    std::string raw;
    line_ = 0;
    while (std::getline(in, raw)) {
      ++line_;
      if (auto pos = raw.find("//"); pos != std::string::npos) raw.erase(pos);
      std::string text = trim(raw);
      if (text.empty()) continue;

      const std::string lowered = toLower(text);
      if (lowered.rfind(".global", 0) == 0) continue;
      if (lowered.rfind(".data", 0) == 0) {
        parseDataDirective(text.substr(5));
        continue;
      }
      if (lowered.rfind(".map", 0) == 0) {
        parseMapDirective(text.substr(4));
        continue;
      }

      // Leading labels (possibly several on one line).
      while (true) {
        size_t i = 0;
        while (i < text.size() && isLabelChar(text[i])) ++i;
        if (i == 0 || i >= text.size() || text[i] != ':') break;
        const std::string name = text.substr(0, i);
        if (!isValidLabel(name)) {
          error("invalid label name '" + name + "'");
          break;
        }
        if (program_.labels.count(name)) {
          error("duplicate label '" + name + "'");
          break;
        }
        program_.labels[name] = static_cast<uint32_t>(pending_.size());
        text = trim(text.substr(i + 1));
      }
      if (!text.empty()) pending_.push_back({line_, text});
    }
  }

  void parseDataDirective(const std::string& rest) {
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      error(".data expects 'addr: hexbytes'");
      return;
    }
    const auto addr = parseInt(rest.substr(0, colon));
    if (!addr) {
      error(".data: bad address");
      return;
    }
    std::vector<uint8_t> bytes;
    std::string hex;
    for (char c : rest.substr(colon + 1))
      if (!std::isspace(static_cast<unsigned char>(c))) hex.push_back(c);
    if (hex.size() % 2 != 0) {
      error(".data: odd number of hex digits");
      return;
    }
    for (size_t i = 0; i < hex.size(); i += 2) {
      const auto b = parseInt("0x" + hex.substr(i, 2));
      if (!b) {
        error(".data: bad hex byte '" + hex.substr(i, 2) + "'");
        return;
      }
      bytes.push_back(static_cast<uint8_t>(*b));
    }
    program_.dataSegments.emplace_back(static_cast<uint64_t>(*addr), std::move(bytes));
  }

  void parseMapDirective(const std::string& rest) {
    const auto parts = splitOperands(rest);
    if (parts.size() != 2) {
      error(".map expects 'addr, len'");
      return;
    }
    const auto addr = parseInt(parts[0]);
    const auto len = parseInt(parts[1]);
    if (!addr || !len || *len <= 0) {
      error(".map: bad address or length");
      return;
    }
    program_.mappings.emplace_back(static_cast<uint64_t>(*addr),
                                   static_cast<uint64_t>(*len));
  }

  // ---- operand parsing ----

  std::optional<unsigned> regIndex(const std::string& s, unsigned maxIdx) {
    const auto v = parseInt(s);
    if (!v || *v < 0 || static_cast<unsigned>(*v) > maxIdx) return std::nullopt;
    return static_cast<unsigned>(*v);
  }

  std::optional<Operand> parseOperand(const std::string& rawText) {
    const std::string text = trim(rawText);
    if (text.empty()) return std::nullopt;
    if (text[0] == '#') {
      const auto v = parseInt(text.substr(1));
      if (!v) return std::nullopt;
      Operand o;
      o.kind = Operand::Kind::Imm;
      o.imm = *v;
      return o;
    }
    if (text[0] == '[') return parseAddress(text);

    const std::string low = toLower(text);
    if (low == "xzr") {
      Operand o;
      o.kind = Operand::Kind::X;
      o.idx = 31;
      return o;
    }
    if (low[0] == 'x' && low.size() > 1 && std::isdigit(static_cast<unsigned char>(low[1]))) {
      const auto idx = regIndex(low.substr(1), 30);
      if (!idx) return std::nullopt;
      Operand o;
      o.kind = Operand::Kind::X;
      o.idx = *idx;
      return o;
    }
    if (low[0] == 'd' && low.size() > 1 && std::isdigit(static_cast<unsigned char>(low[1]))) {
      const auto idx = regIndex(low.substr(1), 31);
      if (!idx) return std::nullopt;
      Operand o;
      o.kind = Operand::Kind::D;
      o.idx = *idx;
      return o;
    }
    if (low[0] == 'z' && low.size() > 1 && std::isdigit(static_cast<unsigned char>(low[1]))) {
      // z5, z5.d, z5.d[1]
      std::string body = low.substr(1);
      unsigned elemIndex = 0;
      bool indexed = false;
      if (auto br = body.find('['); br != std::string::npos) {
        if (body.back() != ']') return std::nullopt;
        const auto v = parseInt(body.substr(br + 1, body.size() - br - 2));
        if (!v || *v < 0) return std::nullopt;
        elemIndex = static_cast<unsigned>(*v);
        indexed = true;
        body = body.substr(0, br);
      }
      std::optional<ElementSize> es;
      if (auto dot = body.find('.'); dot != std::string::npos) {
        es = parseEsize(body.substr(dot + 1));
        if (!es) return std::nullopt;
        body = body.substr(0, dot);
      }
      const auto idx = regIndex(body, 31);
      if (!idx) return std::nullopt;
      Operand o;
      o.kind = indexed ? Operand::Kind::ZIndexed : Operand::Kind::Z;
      o.idx = *idx;
      o.es = es;
      o.elemIndex = elemIndex;
      return o;
    }
    if (low[0] == 'p' && low.size() > 1 && std::isdigit(static_cast<unsigned char>(low[1]))) {
      std::string body = low.substr(1);
      char qual = 0;
      if (auto slash = body.find('/'); slash != std::string::npos) {
        const std::string q = trim(body.substr(slash + 1));
        if (q != "z" && q != "m") return std::nullopt;
        qual = q[0];
        body = trim(body.substr(0, slash));
      }
      std::optional<ElementSize> es;
      if (auto dot = body.find('.'); dot != std::string::npos) {
        es = parseEsize(body.substr(dot + 1));
        if (!es) return std::nullopt;
        body = body.substr(0, dot);
      }
      const auto idx = regIndex(body, 15);
      if (!idx) return std::nullopt;
      Operand o;
      o.kind = Operand::Kind::P;
      o.idx = *idx;
      o.es = es;
      o.qual = qual;
      return o;
    }
    if (isValidLabel(text)) {
      Operand o;
      o.kind = Operand::Kind::Label;
      o.label = text;  // labels are case-preserved
      return o;
    }
    return std::nullopt;
  }

  std::optional<Operand> parseAddress(const std::string& text) {
    if (text.back() != ']') return std::nullopt;
    const auto parts = splitOperands(text.substr(1, text.size() - 2));
    if (parts.empty() || parts.size() > 3) return std::nullopt;
    const auto base = parseOperand(parts[0]);
    if (!base) return std::nullopt;

    Operand o;
    o.kind = Operand::Kind::Addr;
    if (base->kind == Operand::Kind::Z) {
      // [Zn.d, #imm]
      if (base->es != ElementSize::D) return std::nullopt;
      o.addr.kind = AddrExpr::Kind::VecImm;
      o.addr.base = static_cast<uint8_t>(base->idx);
      o.addr.imm = 0;
      if (parts.size() == 2) {
        const auto imm = parseOperand(parts[1]);
        if (!imm || imm->kind != Operand::Kind::Imm) return std::nullopt;
        o.addr.imm = imm->imm;
      } else if (parts.size() == 3) {
        return std::nullopt;
      }
      return o;
    }
    if (base->kind != Operand::Kind::X) return std::nullopt;
    o.addr.base = static_cast<uint8_t>(base->idx);
    if (parts.size() == 1) {
      o.addr.kind = AddrExpr::Kind::Base;
      return o;
    }
    if (parts.size() == 2) {
      const auto imm = parseOperand(parts[1]);
      if (!imm || imm->kind != Operand::Kind::Imm) return std::nullopt;
      o.addr.kind = AddrExpr::Kind::BaseImm;
      o.addr.imm = imm->imm;
      return o;
    }
    // [Xn, Xm, lsl #s]
    const auto idx = parseOperand(parts[1]);
    if (!idx || idx->kind != Operand::Kind::X) return std::nullopt;
    const std::string lslPart = toLower(trim(parts[2]));
    if (lslPart.rfind("lsl", 0) != 0) return std::nullopt;
    const std::string shiftText = trim(lslPart.substr(3));
    if (shiftText.empty() || shiftText[0] != '#') return std::nullopt;
    const auto shift = parseInt(shiftText.substr(1));
    if (!shift || *shift < 0 || *shift > 3) return std::nullopt;
    o.addr.kind = AddrExpr::Kind::BaseRegLsl;
    o.addr.index = static_cast<uint8_t>(idx->idx);
    o.addr.shift = static_cast<uint8_t>(*shift);
    return o;
  }

  // ---- pass 2 ----

  void pass2() {
    for (const auto& p : pending_) {
      line_ = p.line;
      auto instr = parseInstruction(p.text);
      if (instr) {
        instr->line = p.line;
        program_.instructions.push_back(std::move(*instr));
      } else if (diags_.empty() || diags_.back().line != p.line) {
        error("malformed instruction: '" + p.text + "'");
      }
    }
  }

  std::optional<uint32_t> resolveLabel(const std::string& name) {
    const auto it = program_.labels.find(name);
    if (it == program_.labels.end()) {
      error("unresolved label '" + name + "'");
      return std::nullopt;
    }
    return it->second;
  }

  bool immFits(int64_t imm, ElementSize es) {
    const unsigned w = bitsOf(es);
    if (w == 64) return true;
    const int64_t lo = -(int64_t{1} << (w - 1));
    const int64_t hi = (int64_t{1} << w) - 1;
    return imm >= lo && imm <= hi;
  }

  bool requireGoverningRange(const Operand& p) {
    if (p.idx > 7) {
      error("governing predicate p" + std::to_string(p.idx) +
            " out of range: data-processing and memory operations are "
            "restricted to p0-p7");
      return false;
    }
    return true;
  }

  // Operand-pattern helpers.
  static bool isX(const Operand& o) { return o.kind == Operand::Kind::X; }
  static bool isD(const Operand& o) { return o.kind == Operand::Kind::D; }
  static bool isZ(const Operand& o) { return o.kind == Operand::Kind::Z; }
  static bool isP(const Operand& o) { return o.kind == Operand::Kind::P; }
  static bool isImm(const Operand& o) { return o.kind == Operand::Kind::Imm; }
  static bool isAddr(const Operand& o) { return o.kind == Operand::Kind::Addr; }
  static bool isLabel(const Operand& o) { return o.kind == Operand::Kind::Label; }

  std::optional<Instruction> parseInstruction(const std::string& text) {
    size_t sp = text.find_first_of(" \t");
    std::string mnemonic = toLower(sp == std::string::npos ? text : text.substr(0, sp));
    const std::string operandText = sp == std::string::npos ? "" : trim(text.substr(sp));

    std::vector<Operand> ops;
    if (!operandText.empty()) {
      for (const auto& s : splitOperands(operandText)) {
        const auto o = parseOperand(s);
        if (!o) {
          error("malformed operand '" + s + "'");
          return std::nullopt;
        }
        ops.push_back(*o);
      }
    }
    return buildInstruction(mnemonic, ops);
  }

  std::optional<Instruction> buildInstruction(const std::string& mnemonic,
                                              std::vector<Operand>& ops) {
    Instruction in;

    auto fail = [&](const std::string& msg) -> std::optional<Instruction> {
      error(mnemonic + ": " + msg);
      return std::nullopt;
    };
    auto needOps = [&](size_t n) { return ops.size() == n; };

    // b.<cond>
    if (mnemonic.rfind("b.", 0) == 0) {
      const auto cond = parseCond(mnemonic.substr(2));
      if (!cond) return fail("unknown condition");
      if (!needOps(1) || !isLabel(ops[0])) return fail("expects a label operand");
      const auto target = resolveLabel(ops[0].label);
      if (!target) return std::nullopt;
      in.op = Op::BCond;
      in.cond = *cond;
      in.target = *target;
      in.labelName = ops[0].label;
      return in;
    }

    if (mnemonic == "ret") {
      if (!ops.empty()) return fail("takes no operands");
      in.op = Op::Ret;
      return in;
    }
    if (mnemonic == "b") {
      if (!needOps(1) || !isLabel(ops[0])) return fail("expects a label operand");
      const auto target = resolveLabel(ops[0].label);
      if (!target) return std::nullopt;
      in.op = Op::B;
      in.target = *target;
      in.labelName = ops[0].label;
      return in;
    }
    if (mnemonic == "cbz" || mnemonic == "cbnz") {
      if (!needOps(2) || !isX(ops[0]) || !isLabel(ops[1]))
        return fail("expects xN, label");
      const auto target = resolveLabel(ops[1].label);
      if (!target) return std::nullopt;
      in.op = mnemonic == "cbz" ? Op::Cbz : Op::Cbnz;
      in.rn = static_cast<uint8_t>(ops[0].idx);
      in.target = *target;
      in.labelName = ops[1].label;
      return in;
    }
    if (mnemonic == "adr") {
      if (!needOps(2) || !isX(ops[0]) || !isLabel(ops[1]))
        return fail("expects xN, label");
      const auto target = resolveLabel(ops[1].label);
      if (!target) return std::nullopt;
      in.op = Op::Adr;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.target = *target;
      in.labelName = ops[1].label;
      return in;
    }

    if (mnemonic == "mov") {
      if (needOps(2) && isX(ops[0]) && isImm(ops[1])) {
        in.op = Op::MovXImm;
        in.rd = static_cast<uint8_t>(ops[0].idx);
        in.imm = ops[1].imm;
        return in;
      }
      if (needOps(2) && isX(ops[0]) && isX(ops[1])) {
        in.op = Op::MovXReg;
        in.rd = static_cast<uint8_t>(ops[0].idx);
        in.rn = static_cast<uint8_t>(ops[1].idx);
        return in;
      }
      if (needOps(2) && isZ(ops[0]) && isImm(ops[1]))
        return buildDup(mnemonic, ops);
      if (needOps(3) && isZ(ops[0]) && isP(ops[1]) && isX(ops[2]))
        return buildCpy(mnemonic, ops);
      return fail("unsupported operand combination");
    }

    if (mnemonic == "ldr" || mnemonic == "str") {
      if (!needOps(2) || !isAddr(ops[1]) || !(isX(ops[0]) || isD(ops[0])))
        return fail("expects a register and an address");
      if (ops[1].addr.kind == AddrExpr::Kind::VecImm)
        return fail("vector addresses are not valid here");
      const bool load = mnemonic == "ldr";
      in.op = isX(ops[0]) ? (load ? Op::LdrX : Op::StrX) : (load ? Op::LdrD : Op::StrD);
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.addr = ops[1].addr;
      return in;
    }
    if (mnemonic == "ldrsw" || mnemonic == "ldrb") {
      if (!needOps(2) || !isX(ops[0]) || !isAddr(ops[1]))
        return fail("expects xN, address");
      if (ops[1].addr.kind == AddrExpr::Kind::VecImm)
        return fail("vector addresses are not valid here");
      in.op = mnemonic == "ldrsw" ? Op::Ldrsw : Op::Ldrb;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.addr = ops[1].addr;
      return in;
    }

    if (mnemonic == "add" || mnemonic == "sub" || mnemonic == "mul" ||
        mnemonic == "and" || mnemonic == "orr" || mnemonic == "eor" ||
        mnemonic == "bic" || mnemonic == "fadd" || mnemonic == "fsub" ||
        mnemonic == "fmul") {
      // Scalar add/sub.
      if ((mnemonic == "add" || mnemonic == "sub") && needOps(3) && isX(ops[0]) &&
          isX(ops[1]) && (isX(ops[2]) || isImm(ops[2]))) {
        const bool isAdd = mnemonic == "add";
        in.op = isImm(ops[2]) ? (isAdd ? Op::AddImm : Op::SubImm)
                              : (isAdd ? Op::AddReg : Op::SubReg);
        in.rd = static_cast<uint8_t>(ops[0].idx);
        in.rn = static_cast<uint8_t>(ops[1].idx);
        if (isImm(ops[2]))
          in.imm = ops[2].imm;
        else
          in.rm = static_cast<uint8_t>(ops[2].idx);
        return in;
      }
      // Predicate logical.
      if ((mnemonic == "and" || mnemonic == "orr" || mnemonic == "eor" ||
           mnemonic == "bic") &&
          needOps(4) && isP(ops[0]) && isP(ops[1]) && isP(ops[2]) && isP(ops[3])) {
        if (ops[1].qual != 'z') return fail("governing predicate requires /z");
        in.op = Op::PredLogical;
        in.plOp = mnemonic == "and"   ? PredLogicalOp::And
                  : mnemonic == "orr" ? PredLogicalOp::Orr
                  : mnemonic == "eor" ? PredLogicalOp::Eor
                                      : PredLogicalOp::Bic;
        in.es = ops[0].es.value_or(ElementSize::B);
        in.pd = static_cast<uint8_t>(ops[0].idx);
        in.pg = static_cast<uint8_t>(ops[1].idx);
        in.pn = static_cast<uint8_t>(ops[2].idx);
        in.pm = static_cast<uint8_t>(ops[3].idx);
        return in;
      }
      // Predicated vector elementwise, destructive.
      if (needOps(4) && isZ(ops[0]) && isP(ops[1]) && isZ(ops[2]) && isZ(ops[3])) {
        if (mnemonic == "bic") return fail("no vector form in this subset");
        if (ops[1].qual != 'm') return fail("merging predication (/m) required");
        if (!requireGoverningRange(ops[1])) return std::nullopt;
        if (!ops[0].es || ops[0].es != ops[2].es || ops[0].es != ops[3].es)
          return fail("element size mismatch");
        if (ops[2].idx != ops[0].idx)
          return fail("destructive form requires the first source to be the destination");
        const bool fp = mnemonic[0] == 'f';
        if (fp && ops[0].es != ElementSize::S && ops[0].es != ElementSize::D)
          return fail("floating-point ops require .s or .d");
        in.op = Op::Elementwise;
        in.ewOp = mnemonic == "add"    ? ElementwiseOp::Add
                  : mnemonic == "sub"  ? ElementwiseOp::Sub
                  : mnemonic == "mul"  ? ElementwiseOp::Mul
                  : mnemonic == "and"  ? ElementwiseOp::And
                  : mnemonic == "orr"  ? ElementwiseOp::Orr
                  : mnemonic == "eor"  ? ElementwiseOp::Eor
                  : mnemonic == "fadd" ? ElementwiseOp::Fadd
                  : mnemonic == "fsub" ? ElementwiseOp::Fsub
                                       : ElementwiseOp::Fmul;
        in.es = *ops[0].es;
        in.rd = static_cast<uint8_t>(ops[0].idx);
        in.pg = static_cast<uint8_t>(ops[1].idx);
        in.rm = static_cast<uint8_t>(ops[3].idx);
        return in;
      }
      return fail("unsupported operand combination");
    }

    if (mnemonic == "cmp") {
      if (needOps(2) && isX(ops[0]) && isX(ops[1])) {
        in.op = Op::CmpReg;
        in.rn = static_cast<uint8_t>(ops[0].idx);
        in.rm = static_cast<uint8_t>(ops[1].idx);
        return in;
      }
      if (needOps(2) && isX(ops[0]) && isImm(ops[1])) {
        in.op = Op::CmpImm;
        in.rn = static_cast<uint8_t>(ops[0].idx);
        in.imm = ops[1].imm;
        return in;
      }
      return fail("expects xN, xM or xN, #imm");
    }

    if (mnemonic == "fmadd") {
      if (!needOps(4) || !isD(ops[0]) || !isD(ops[1]) || !isD(ops[2]) || !isD(ops[3]))
        return fail("expects four d registers");
      in.op = Op::Fmadd;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.rn = static_cast<uint8_t>(ops[1].idx);
      in.rm = static_cast<uint8_t>(ops[2].idx);
      in.ra = static_cast<uint8_t>(ops[3].idx);
      return in;
    }

    if (mnemonic == "ptrue" || mnemonic == "pfalse") {
      if (!needOps(1) || !isP(ops[0]) || !ops[0].es)
        return fail("expects pN.<esize>");
      in.op = mnemonic == "ptrue" ? Op::Ptrue : Op::Pfalse;
      in.pd = static_cast<uint8_t>(ops[0].idx);
      in.es = *ops[0].es;
      return in;
    }

    if (mnemonic == "whilelt") {
      if (!needOps(3) || !isP(ops[0]) || !ops[0].es || !isX(ops[1]) || !isX(ops[2]))
        return fail("expects pN.<esize>, xN, xM");
      in.op = Op::Whilelt;
      in.pd = static_cast<uint8_t>(ops[0].idx);
      in.es = *ops[0].es;
      in.rn = static_cast<uint8_t>(ops[1].idx);
      in.rm = static_cast<uint8_t>(ops[2].idx);
      return in;
    }

    if (mnemonic == "pnext") {
      if (!needOps(3) || !isP(ops[0]) || !ops[0].es || !isP(ops[1]) || !isP(ops[2]))
        return fail("expects pN.<esize>, pG, pN.<esize>");
      if (ops[2].idx != ops[0].idx)
        return fail("destructive form requires the first source to be the destination");
      in.op = Op::Pnext;
      in.pd = static_cast<uint8_t>(ops[0].idx);
      in.es = *ops[0].es;
      in.pg = static_cast<uint8_t>(ops[1].idx);
      return in;
    }

    if (mnemonic == "brka" || mnemonic == "brkas" || mnemonic == "brkb" ||
        mnemonic == "brkbs") {
      if (!needOps(3) || !isP(ops[0]) || !isP(ops[1]) || !isP(ops[2]))
        return fail("expects pD, pG/z, pN");
      if (ops[1].qual != 'z') return fail("zeroing predication (/z) required");
      in.op = Op::Brk;
      in.brkKind = mnemonic[3] == 'a' ? BreakKind::After : BreakKind::Before;
      in.setsFlags = mnemonic.back() == 's';
      in.es = ops[0].es.value_or(ElementSize::B);
      in.pd = static_cast<uint8_t>(ops[0].idx);
      in.pg = static_cast<uint8_t>(ops[1].idx);
      in.pn = static_cast<uint8_t>(ops[2].idx);
      return in;
    }

    if (mnemonic == "cmpeq") {
      if (!needOps(4) || !isP(ops[0]) || !isP(ops[1]) || !isZ(ops[2]) || !isImm(ops[3]))
        return fail("expects pD.<esize>, pG/z, zN.<esize>, #imm");
      if (ops[1].qual != 'z') return fail("zeroing predication (/z) required");
      if (!requireGoverningRange(ops[1])) return std::nullopt;
      if (!ops[0].es || ops[0].es != ops[2].es) return fail("element size mismatch");
      if (!immFits(ops[3].imm, *ops[0].es))
        return fail("immediate does not fit the element width");
      in.op = Op::CmpeqImm;
      in.pd = static_cast<uint8_t>(ops[0].idx);
      in.pg = static_cast<uint8_t>(ops[1].idx);
      in.rn = static_cast<uint8_t>(ops[2].idx);
      in.imm = ops[3].imm;
      in.es = *ops[0].es;
      return in;
    }

    if (mnemonic == "ctermeq" || mnemonic == "ctermne") {
      if (!needOps(2) || !isX(ops[0]) || !isX(ops[1])) return fail("expects xN, xM");
      in.op = Op::Cterm;
      in.imm = mnemonic == "ctermeq" ? 1 : 0;
      in.rn = static_cast<uint8_t>(ops[0].idx);
      in.rm = static_cast<uint8_t>(ops[1].idx);
      return in;
    }

    if (mnemonic == "setffr") {
      if (!ops.empty()) return fail("takes no operands");
      in.op = Op::Setffr;
      return in;
    }

    if (mnemonic == "rdffr") {
      if (!needOps(2) || !isP(ops[0]) || !isP(ops[1]))
        return fail("expects pD, pG/z");
      if (ops[1].qual != 'z') return fail("zeroing predication (/z) required");
      in.op = Op::Rdffr;
      in.pd = static_cast<uint8_t>(ops[0].idx);
      in.pg = static_cast<uint8_t>(ops[1].idx);
      in.es = ops[0].es.value_or(ElementSize::B);
      return in;
    }

    if (mnemonic == "incp") {
      if (!needOps(2) || !isX(ops[0]) || !isP(ops[1]) || !ops[1].es)
        return fail("expects xN, pM.<esize>");
      in.op = Op::Incp;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.pm = static_cast<uint8_t>(ops[1].idx);
      in.es = *ops[1].es;
      return in;
    }

    if (mnemonic == "incb" || mnemonic == "inch" || mnemonic == "incw" ||
        mnemonic == "incd") {
      if (!needOps(1) || !isX(ops[0])) return fail("expects xN");
      in.op = Op::IncScalar;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.es = *parseEsize(mnemonic.substr(3));
      return in;
    }

    if (mnemonic == "dup") return buildDup(mnemonic, ops);
    if (mnemonic == "cpy") return buildCpy(mnemonic, ops);

    if (mnemonic == "index") {
      if (!needOps(3) || !isZ(ops[0]) || !ops[0].es || !isImm(ops[1]) || !isImm(ops[2]))
        return fail("expects zN.<esize>, #base, #step");
      in.op = Op::Index;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.es = *ops[0].es;
      in.imm = ops[1].imm;
      in.imm2 = ops[2].imm;
      return in;
    }

    if (mnemonic == "fmla") {
      if (!needOps(4) || !isZ(ops[0]) || !isP(ops[1]) || !isZ(ops[2]) || !isZ(ops[3]))
        return fail("expects zD, pG/m, zN, zM");
      if (ops[1].qual != 'm') return fail("merging predication (/m) required");
      if (!requireGoverningRange(ops[1])) return std::nullopt;
      if (!ops[0].es || ops[0].es != ops[2].es || ops[0].es != ops[3].es)
        return fail("element size mismatch");
      if (ops[0].es != ElementSize::S && ops[0].es != ElementSize::D)
        return fail("requires .s or .d");
      in.op = Op::Fmla;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.pg = static_cast<uint8_t>(ops[1].idx);
      in.rn = static_cast<uint8_t>(ops[2].idx);
      in.rm = static_cast<uint8_t>(ops[3].idx);
      in.es = *ops[0].es;
      return in;
    }

    if (mnemonic == "eorv" || mnemonic == "orv" || mnemonic == "andv" ||
        mnemonic == "uaddv" || mnemonic == "smaxv" || mnemonic == "sminv") {
      if (!needOps(3) || !isD(ops[0]) || !isP(ops[1]) || !isZ(ops[2]) || !ops[2].es)
        return fail("expects dN, pG, zM.<esize>");
      if (!requireGoverningRange(ops[1])) return std::nullopt;
      in.op = Op::Reduce;
      in.redKind = mnemonic == "eorv"    ? ReduceKind::Eorv
                   : mnemonic == "orv"   ? ReduceKind::Orv
                   : mnemonic == "andv"  ? ReduceKind::Andv
                   : mnemonic == "uaddv" ? ReduceKind::Uaddv
                   : mnemonic == "smaxv" ? ReduceKind::Smaxv
                                         : ReduceKind::Sminv;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.pg = static_cast<uint8_t>(ops[1].idx);
      in.rm = static_cast<uint8_t>(ops[2].idx);
      in.es = *ops[2].es;
      return in;
    }

    if (mnemonic == "fadda") {
      if (!needOps(4) || !isD(ops[0]) || !isP(ops[1]) || !isD(ops[2]) || !isZ(ops[3]) ||
          !ops[3].es)
        return fail("expects dD, pG, dD, zM.<esize>");
      if (ops[2].idx != ops[0].idx)
        return fail("destructive form requires the first source to be the destination");
      if (!requireGoverningRange(ops[1])) return std::nullopt;
      if (ops[3].es != ElementSize::S && ops[3].es != ElementSize::D)
        return fail("requires .s or .d");
      in.op = Op::Fadda;
      in.rd = static_cast<uint8_t>(ops[0].idx);
      in.pg = static_cast<uint8_t>(ops[1].idx);
      in.rm = static_cast<uint8_t>(ops[3].idx);
      in.es = *ops[3].es;
      return in;
    }

    if (mnemonic == "movprfx") {
      if (needOps(2) && isZ(ops[0]) && isZ(ops[1])) {
        in.op = Op::Movprfx;
        in.prfxForm = MovprfxForm::Unpredicated;
        in.rd = static_cast<uint8_t>(ops[0].idx);
        in.rn = static_cast<uint8_t>(ops[1].idx);
        return in;
      }
      if (needOps(3) && isZ(ops[0]) && isP(ops[1]) && isZ(ops[2])) {
        if (ops[1].qual != 'z' && ops[1].qual != 'm')
          return fail("predicated form requires /z or /m");
        if (!requireGoverningRange(ops[1])) return std::nullopt;
        if (!ops[0].es || ops[0].es != ops[2].es) return fail("element size mismatch");
        in.op = Op::Movprfx;
        in.prfxForm = ops[1].qual == 'z' ? MovprfxForm::Zeroing : MovprfxForm::Merging;
        in.rd = static_cast<uint8_t>(ops[0].idx);
        in.pg = static_cast<uint8_t>(ops[1].idx);
        in.rn = static_cast<uint8_t>(ops[2].idx);
        in.es = *ops[0].es;
        return in;
      }
      return fail("expects zD, zN or zD.<esize>, pG/z|m, zN.<esize>");
    }

    if (mnemonic == "umov") {
      if (needOps(2) && isX(ops[0]) && isD(ops[1])) {
        in.op = Op::Umov;
        in.rd = static_cast<uint8_t>(ops[0].idx);
        in.rn = static_cast<uint8_t>(ops[1].idx);
        in.es = ElementSize::D;
        in.elemIndex = 0;
        return in;
      }
      if (needOps(2) && isX(ops[0]) && ops[1].kind == Operand::Kind::ZIndexed) {
        if (!ops[1].es) return fail("element size required");
        const unsigned maxElems = kMaxVlBits / bitsOf(*ops[1].es);
        if (ops[1].elemIndex >= maxElems) return fail("element index out of range");
        in.op = Op::Umov;
        in.rd = static_cast<uint8_t>(ops[0].idx);
        in.rn = static_cast<uint8_t>(ops[1].idx);
        in.es = *ops[1].es;
        in.elemIndex = ops[1].elemIndex;
        in.imm = 1;  // marks the indexed source form
        return in;
      }
      return fail("expects xN, dM or xN, zM.<esize>[i]");
    }

    // Vector loads/stores.
    if (mnemonic.rfind("ld1", 0) == 0 || mnemonic.rfind("st1", 0) == 0 ||
        mnemonic.rfind("ldff1", 0) == 0) {
      return buildVectorMemory(mnemonic, ops);
    }

    error("unknown mnemonic '" + mnemonic + "'");
    return std::nullopt;
  }

  std::optional<Instruction> buildDup(const std::string& mnemonic,
                                      std::vector<Operand>& ops) {
    auto fail = [&](const std::string& msg) -> std::optional<Instruction> {
      error(mnemonic + ": " + msg);
      return std::nullopt;
    };
    if (ops.size() != 2 || !isZ(ops[0]) || !ops[0].es || !isImm(ops[1]))
      return fail("expects zN.<esize>, #imm");
    if (!immFits(ops[1].imm, *ops[0].es))
      return fail("immediate does not fit the element width");
    Instruction in;
    in.op = Op::DupImm;
    in.rd = static_cast<uint8_t>(ops[0].idx);
    in.es = *ops[0].es;
    in.imm = ops[1].imm;
    return in;
  }

  std::optional<Instruction> buildCpy(const std::string& mnemonic,
                                      std::vector<Operand>& ops) {
    auto fail = [&](const std::string& msg) -> std::optional<Instruction> {
      error(mnemonic + ": " + msg);
      return std::nullopt;
    };
    if (ops.size() != 3 || !isZ(ops[0]) || !ops[0].es || !isP(ops[1]) || !isX(ops[2]))
      return fail("expects zN.<esize>, pG/m, xM");
    if (ops[1].qual != 'm') return fail("merging predication (/m) required");
    if (!requireGoverningRange(ops[1])) return std::nullopt;
    Instruction in;
    in.op = Op::Cpy;
    in.rd = static_cast<uint8_t>(ops[0].idx);
    in.es = *ops[0].es;
    in.pg = static_cast<uint8_t>(ops[1].idx);
    in.rn = static_cast<uint8_t>(ops[2].idx);
    return in;
  }

  std::optional<Instruction> buildVectorMemory(const std::string& mnemonic,
                                               std::vector<Operand>& ops) {
    auto fail = [&](const std::string& msg) -> std::optional<Instruction> {
      error(mnemonic + ": " + msg);
      return std::nullopt;
    };

    Instruction in;
    std::string sizePart;
    if (mnemonic.rfind("ldff1", 0) == 0) {
      in.op = Op::Ldff1;
      sizePart = mnemonic.substr(5);
    } else if (mnemonic.rfind("ld1r", 0) == 0) {
      in.op = Op::Ld1R;
      sizePart = mnemonic.substr(4);
    } else if (mnemonic.rfind("ld1", 0) == 0) {
      in.op = Op::Ld1;
      sizePart = mnemonic.substr(3);
    } else {
      in.op = Op::St1;
      sizePart = mnemonic.substr(3);
    }
    const auto es = parseEsize(sizePart);
    if (!es) {
      error("unknown mnemonic '" + mnemonic + "'");
      return std::nullopt;
    }
    if (in.op == Op::Ld1R && *es != ElementSize::D)
      return fail("only the .d form is supported");
    if (in.op == Op::St1 && *es != ElementSize::B && *es != ElementSize::D)
      return fail("only st1b and st1d are supported");
    if (in.op == Op::Ldff1 && *es != ElementSize::B && *es != ElementSize::D)
      return fail("only ldff1b and ldff1d are supported");
    in.es = *es;

    if (ops.size() != 3 || !isZ(ops[0]) || !isP(ops[1]) || !isAddr(ops[2]))
      return fail("expects zT.<esize>, pG[/z], address");
    if (ops[0].es != *es) return fail("element size suffix mismatch");
    const bool isStore = in.op == Op::St1;
    if (isStore) {
      if (ops[1].qual != 0) return fail("store predicate takes no /z or /m");
    } else {
      if (ops[1].qual != 'z') return fail("zeroing predication (/z) required");
    }
    if (!requireGoverningRange(ops[1])) return std::nullopt;

    const AddrExpr& addr = ops[2].addr;
    if (addr.kind == AddrExpr::Kind::VecImm) {
      if (*es != ElementSize::D)
        return fail("gather/scatter addressing requires .d elements");
      if (in.op == Op::Ld1R) return fail("vector addresses are not valid here");
    } else if (addr.kind == AddrExpr::Kind::BaseRegLsl) {
      const unsigned expected = static_cast<unsigned>(__builtin_ctz(bytesOf(*es)));
      if (addr.shift != expected)
        return fail("shift must match the element size (lsl #" +
                    std::to_string(expected) + ")");
    } else if (in.op == Op::Ld1R && addr.kind != AddrExpr::Kind::Base &&
               addr.kind != AddrExpr::Kind::BaseImm) {
      return fail("unsupported address form");
    }

    in.rd = static_cast<uint8_t>(ops[0].idx);
    in.pg = static_cast<uint8_t>(ops[1].idx);
    in.addr = addr;
    return in;
  }

  // movprfx must be followed by an eligible destructive operation whose
  // destructive operand is the movprfx destination.
  void validateMovprfx() {
    for (size_t i = 0; i < program_.instructions.size(); ++i) {
      const Instruction& in = program_.instructions[i];
      if (in.op != Op::Movprfx) continue;
      line_ = in.line;
      if (i + 1 >= program_.instructions.size()) {
        error("movprfx must be followed by a destructive operation");
        continue;
      }
      const Instruction& next = program_.instructions[i + 1];
      if (next.op != Op::Elementwise && next.op != Op::Fmla) {
        error("movprfx must be followed by a destructive data-processing "
              "operation");
        continue;
      }
      if (next.rd != in.rd)
        error("movprfx destination z" + std::to_string(in.rd) +
              " does not match the following instruction's destination z" +
              std::to_string(next.rd));
      if (in.prfxForm != MovprfxForm::Unpredicated && in.es != next.es)
        error("movprfx element size does not match the following instruction");
      // Branching into the pair would split it; forbid any label on the
      // destructive half.
      for (const auto& [name, idx] : program_.labels)
        if (idx == i + 1)
          error("label '" + name + "' lands between movprfx and its "
                "destructive operation");
    }
  }
};

}  // namespace

AssembleResult assemble(const std::string& source) { return Assembler{}.run(source); }

namespace {

std::string xreg(unsigned idx) {
  return idx == 31 ? "xzr" : "x" + std::to_string(idx);
}

std::string preg(unsigned idx, std::optional<ElementSize> es = std::nullopt,
                 char qual = 0) {
  std::string s = "p" + std::to_string(idx);
  if (es) s += std::string(".") + suffixOf(*es);
  if (qual) s += std::string("/") + qual;
  return s;
}

std::string zreg(unsigned idx, ElementSize es) {
  return "z" + std::to_string(idx) + "." + suffixOf(es);
}

std::string dreg(unsigned idx) { return "d" + std::to_string(idx); }

std::string imm(int64_t v) { return "#" + std::to_string(v); }

std::string formatAddr(const AddrExpr& a) {
  switch (a.kind) {
    case AddrExpr::Kind::Base:
      return "[" + xreg(a.base) + "]";
    case AddrExpr::Kind::BaseImm:
      return "[" + xreg(a.base) + ", " + imm(a.imm) + "]";
    case AddrExpr::Kind::BaseRegLsl:
      return "[" + xreg(a.base) + ", " + xreg(a.index) + ", lsl #" +
             std::to_string(a.shift) + "]";
    case AddrExpr::Kind::VecImm:
      return "[" + zreg(a.base, ElementSize::D) + ", " + imm(a.imm) + "]";
  }
  return "[?]";
}

const char* ewName(ElementwiseOp op) {
  switch (op) {
    case ElementwiseOp::Add: return "add";
    case ElementwiseOp::Sub: return "sub";
    case ElementwiseOp::Mul: return "mul";
    case ElementwiseOp::And: return "and";
    case ElementwiseOp::Orr: return "orr";
    case ElementwiseOp::Eor: return "eor";
    case ElementwiseOp::Fadd: return "fadd";
    case ElementwiseOp::Fsub: return "fsub";
    case ElementwiseOp::Fmul: return "fmul";
  }
  return "?";
}

const char* plName(PredLogicalOp op) {
  switch (op) {
    case PredLogicalOp::And: return "and";
    case PredLogicalOp::Orr: return "orr";
    case PredLogicalOp::Eor: return "eor";
    case PredLogicalOp::Bic: return "bic";
  }
  return "?";
}

const char* reduceName(ReduceKind k) {
  switch (k) {
    case ReduceKind::Eorv: return "eorv";
    case ReduceKind::Orv: return "orv";
    case ReduceKind::Andv: return "andv";
    case ReduceKind::Uaddv: return "uaddv";
    case ReduceKind::Smaxv: return "smaxv";
    case ReduceKind::Sminv: return "sminv";
  }
  return "?";
}

}  // namespace

std::string formatInstruction(const Instruction& in) {
  const char sfx = suffixOf(in.es);
  switch (in.op) {
    case Op::MovXImm: return "mov " + xreg(in.rd) + ", " + imm(in.imm);
    case Op::MovXReg: return "mov " + xreg(in.rd) + ", " + xreg(in.rn);
    case Op::LdrX: return "ldr " + xreg(in.rd) + ", " + formatAddr(in.addr);
    case Op::LdrD: return "ldr " + dreg(in.rd) + ", " + formatAddr(in.addr);
    case Op::StrX: return "str " + xreg(in.rd) + ", " + formatAddr(in.addr);
    case Op::StrD: return "str " + dreg(in.rd) + ", " + formatAddr(in.addr);
    case Op::Ldrsw: return "ldrsw " + xreg(in.rd) + ", " + formatAddr(in.addr);
    case Op::Ldrb: return "ldrb " + xreg(in.rd) + ", " + formatAddr(in.addr);
    case Op::Adr: return "adr " + xreg(in.rd) + ", " + in.labelName;
    case Op::AddImm:
      return "add " + xreg(in.rd) + ", " + xreg(in.rn) + ", " + imm(in.imm);
    case Op::AddReg:
      return "add " + xreg(in.rd) + ", " + xreg(in.rn) + ", " + xreg(in.rm);
    case Op::SubImm:
      return "sub " + xreg(in.rd) + ", " + xreg(in.rn) + ", " + imm(in.imm);
    case Op::SubReg:
      return "sub " + xreg(in.rd) + ", " + xreg(in.rn) + ", " + xreg(in.rm);
    case Op::CmpImm: return "cmp " + xreg(in.rn) + ", " + imm(in.imm);
    case Op::CmpReg: return "cmp " + xreg(in.rn) + ", " + xreg(in.rm);
    case Op::Fmadd:
      return "fmadd " + dreg(in.rd) + ", " + dreg(in.rn) + ", " + dreg(in.rm) +
             ", " + dreg(in.ra);
    case Op::Cbz: return "cbz " + xreg(in.rn) + ", " + in.labelName;
    case Op::Cbnz: return "cbnz " + xreg(in.rn) + ", " + in.labelName;
    case Op::B: return "b " + in.labelName;
    case Op::BCond: return std::string("b.") + condName(in.cond) + " " + in.labelName;
    case Op::Ret: return "ret";
    case Op::Ptrue: return "ptrue " + preg(in.pd, in.es);
    case Op::Pfalse: return "pfalse " + preg(in.pd, in.es);
    case Op::Whilelt:
      return "whilelt " + preg(in.pd, in.es) + ", " + xreg(in.rn) + ", " + xreg(in.rm);
    case Op::Pnext:
      return "pnext " + preg(in.pd, in.es) + ", " + preg(in.pg) + ", " +
             preg(in.pd, in.es);
    case Op::Brk: {
      std::string m = in.brkKind == BreakKind::After ? "brka" : "brkb";
      if (in.setsFlags) m += "s";
      return m + " " + preg(in.pd, in.es) + ", " + preg(in.pg, std::nullopt, 'z') +
             ", " + preg(in.pn, in.es);
    }
    case Op::CmpeqImm:
      return "cmpeq " + preg(in.pd, in.es) + ", " + preg(in.pg, std::nullopt, 'z') +
             ", " + zreg(in.rn, in.es) + ", " + imm(in.imm);
    case Op::PredLogical:
      return std::string(plName(in.plOp)) + " " + preg(in.pd, in.es) + ", " +
             preg(in.pg, std::nullopt, 'z') + ", " + preg(in.pn, in.es) + ", " +
             preg(in.pm, in.es);
    case Op::Cterm:
      return std::string(in.imm ? "ctermeq" : "ctermne") + " " + xreg(in.rn) + ", " +
             xreg(in.rm);
    case Op::Setffr: return "setffr";
    case Op::Rdffr:
      return "rdffr " + preg(in.pd, in.es) + ", " + preg(in.pg, std::nullopt, 'z');
    case Op::Incp: return "incp " + xreg(in.rd) + ", " + preg(in.pm, in.es);
    case Op::IncScalar: return std::string("inc") + sfx + " " + xreg(in.rd);
    case Op::DupImm: return "dup " + zreg(in.rd, in.es) + ", " + imm(in.imm);
    case Op::Cpy:
      return "cpy " + zreg(in.rd, in.es) + ", " + preg(in.pg, std::nullopt, 'm') +
             ", " + xreg(in.rn);
    case Op::Index:
      return "index " + zreg(in.rd, in.es) + ", " + imm(in.imm) + ", " + imm(in.imm2);
    case Op::Elementwise:
      return std::string(ewName(in.ewOp)) + " " + zreg(in.rd, in.es) + ", " +
             preg(in.pg, std::nullopt, 'm') + ", " + zreg(in.rd, in.es) + ", " +
             zreg(in.rm, in.es);
    case Op::Fmla:
      return "fmla " + zreg(in.rd, in.es) + ", " + preg(in.pg, std::nullopt, 'm') +
             ", " + zreg(in.rn, in.es) + ", " + zreg(in.rm, in.es);
    case Op::Reduce:
      return std::string(reduceName(in.redKind)) + " " + dreg(in.rd) + ", " +
             preg(in.pg) + ", " + zreg(in.rm, in.es);
    case Op::Fadda:
      return "fadda " + dreg(in.rd) + ", " + preg(in.pg) + ", " + dreg(in.rd) + ", " +
             zreg(in.rm, in.es);
    case Op::Movprfx:
      switch (in.prfxForm) {
        case MovprfxForm::Unpredicated:
          return "movprfx z" + std::to_string(in.rd) + ", z" + std::to_string(in.rn);
        case MovprfxForm::Zeroing:
          return "movprfx " + zreg(in.rd, in.es) + ", " +
                 preg(in.pg, std::nullopt, 'z') + ", " + zreg(in.rn, in.es);
        case MovprfxForm::Merging:
          return "movprfx " + zreg(in.rd, in.es) + ", " +
                 preg(in.pg, std::nullopt, 'm') + ", " + zreg(in.rn, in.es);
      }
      return "movprfx ?";
    case Op::Umov:
      if (in.imm)
        return "umov " + xreg(in.rd) + ", " + zreg(in.rn, in.es) + "[" +
               std::to_string(in.elemIndex) + "]";
      return "umov " + xreg(in.rd) + ", " + dreg(in.rn);
    case Op::Ld1:
      return std::string("ld1") + sfx + " " + zreg(in.rd, in.es) + ", " +
             preg(in.pg, std::nullopt, 'z') + ", " + formatAddr(in.addr);
    case Op::Ld1R:
      return std::string("ld1r") + sfx + " " + zreg(in.rd, in.es) + ", " +
             preg(in.pg, std::nullopt, 'z') + ", " + formatAddr(in.addr);
    case Op::Ldff1:
      return std::string("ldff1") + sfx + " " + zreg(in.rd, in.es) + ", " +
             preg(in.pg, std::nullopt, 'z') + ", " + formatAddr(in.addr);
    case Op::St1:
      return std::string("st1") + sfx + " " + zreg(in.rd, in.es) + ", " +
             preg(in.pg) + ", " + formatAddr(in.addr);
  }
  return "?";
}

std::string formatProgram(const Program& program) {
  std::ostringstream out;
  for (const auto& [addr, len] : program.mappings) {
    out << ".map 0x" << std::hex << addr << std::dec << ", " << len << "\n";
  }
  for (const auto& [addr, bytes] : program.dataSegments) {
    out << ".data 0x" << std::hex << addr << ":";
    for (uint8_t b : bytes) {
      out << " ";
      out << "0123456789abcdef"[b >> 4] << "0123456789abcdef"[b & 0xF];
    }
    out << std::dec << "\n";
  }
  // Labels grouped by target index.
  std::vector<std::vector<std::string>> labelAt(program.instructions.size() + 1);
  for (const auto& [name, idx] : program.labels) labelAt[idx].push_back(name);
  for (size_t i = 0; i <= program.instructions.size(); ++i) {
    for (const auto& name : labelAt[i]) out << name << ":\n";
    if (i < program.instructions.size())
      out << "  " << formatInstruction(program.instructions[i]) << "\n";
  }
  return out.str();
}

}  // namespace svesim
