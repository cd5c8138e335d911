#include "cadbench/step_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace cadbench {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".";
    return s;
}

struct Writer {
    std::ostringstream out;
    int next_id = 1;

    int emit(const std::string& body) {
        const int id = next_id++;
        out << "#" << id << "=" << body << ";\n";
        return id;
    }

    int placement(const SimilarityTransform& pose) {
        const Vec3 loc = pose.translation;
        const Vec3 axis = pose.rotation.col(2);
        const Vec3 ref = pose.rotation.col(0);
        const int p = emit("CARTESIAN_POINT('',(" + fmt(loc.x()) + "," + fmt(loc.y()) + "," +
                           fmt(loc.z()) + "))");
        const int a = emit("DIRECTION('',(" + fmt(axis.x()) + "," + fmt(axis.y()) + "," +
                           fmt(axis.z()) + "))");
        const int r = emit("DIRECTION('',(" + fmt(ref.x()) + "," + fmt(ref.y()) + "," +
                           fmt(ref.z()) + "))");
        return emit("AXIS2_PLACEMENT_3D('',#" + std::to_string(p) + ",#" + std::to_string(a) +
                    ",#" + std::to_string(r) + ")");
    }

    int primitive(const Primitive& prim) {
        const double s = prim.pose.scale;
        SimilarityTransform rigid = prim.pose;
        rigid.scale = 1.0;
        const int pl = placement(rigid);
        const std::string ref = "#" + std::to_string(pl);
        switch (prim.kind) {
        case PrimitiveKind::box:
            return emit("BLOCK(''," + ref + "," + fmt(prim.a * s) + "," + fmt(prim.b * s) + "," +
                        fmt(prim.c * s) + ")");
        case PrimitiveKind::cylinder:
            return emit("RIGHT_CIRCULAR_CYLINDER(''," + ref + "," + fmt(prim.b * s) + "," +
                        fmt(prim.a * s) + ")");
        case PrimitiveKind::sphere:
            return emit("SPHERE(''," + ref + "," + fmt(prim.a * s) + ")");
        case PrimitiveKind::cone:
            return emit("RIGHT_CIRCULAR_CONE(''," + ref + "," + fmt(prim.b * s) + "," +
                        fmt(prim.a * s) + "," + fmt(prim.c * s) + ")");
        }
        throw StepError("unknown primitive kind");
    }

    int node(const CsgNode& n) {
        if (n.kind == CsgNode::Kind::primitive) return primitive(n.prim);
        const int l = node(*n.left);
        const int r = node(*n.right);
        const char* op = n.op == BoolOp::unite      ? ".UNION."
                         : n.op == BoolOp::subtract ? ".DIFFERENCE."
                                                    : ".INTERSECTION.";
        return emit(std::string("BOOLEAN_RESULT(") + op + ",#" + std::to_string(l) + ",#" +
                    std::to_string(r) + ")");
    }
};

}  // namespace

std::string to_step(const BRepModel& model) {
    if (model.empty()) throw StepError("cannot serialize an empty model");
    Writer w;
    w.out << "ISO-10303-21;\nHEADER;\n";
    w.out << "FILE_DESCRIPTION(('csg solid'),'2;1');\n";
    w.out << "FILE_NAME('model.step','',('cadbench'),(''),'cadbench','','');\n";
    w.out << "FILE_SCHEMA(('AUTOMOTIVE_DESIGN { 1 0 10303 214 1 1 1 1 }'));\n";
    w.out << "ENDSEC;\nDATA;\n";
    const CsgNodePtr folded = transformed(model.tree(), model.root_transform());
    const int root = w.node(*folded);
    w.emit("CSG_SOLID('',#" + std::to_string(root) + ")");
    w.out << "ENDSEC;\nEND-ISO-10303-21;\n";
    return w.out.str();
}

void save_step(const BRepModel& model, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StepError("cannot open for writing: " + path.string());
    f << to_step(model);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Arg;
using ArgList = std::vector<Arg>;
struct Arg {
    enum class Kind { number, string, enum_value, ref, list, star };
    Kind kind = Kind::star;
    double number = 0.0;
    std::string text;
    int ref = 0;
    std::vector<Arg> items;
};

struct Entity {
    std::string type;
    ArgList args;
};

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) != 0)) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw StepError(std::string("STEP parse: expected '") + c + "'");
    }

    Arg parse_arg() {
        skip_ws();
        if (pos >= s.size()) throw StepError("STEP parse: unexpected end");
        const char c = s[pos];
        Arg a;
        if (c == '#') {
            ++pos;
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            a.kind = Arg::Kind::ref;
            a.ref = std::stoi(s.substr(start, pos - start));
            return a;
        }
        if (c == '\'') {
            ++pos;
            size_t start = pos;
            while (pos < s.size() && s[pos] != '\'') ++pos;
            a.kind = Arg::Kind::string;
            a.text = s.substr(start, pos - start);
            ++pos;
            return a;
        }
        if (c == '.') {
            ++pos;
            size_t start = pos;
            while (pos < s.size() && s[pos] != '.') ++pos;
            a.kind = Arg::Kind::enum_value;
            a.text = s.substr(start, pos - start);
            ++pos;
            return a;
        }
        if (c == '(') {
            ++pos;
            a.kind = Arg::Kind::list;
            skip_ws();
            if (!eat(')')) {
                do {
                    a.items.push_back(parse_arg());
                } while (eat(','));
                expect(')');
            }
            return a;
        }
        if (c == '*' || c == '$') {
            ++pos;
            a.kind = Arg::Kind::star;
            return a;
        }
        size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                                  s[pos] == '-' || s[pos] == '+' || s[pos] == 'e' || s[pos] == 'E')) {
            ++pos;
        }
        if (start == pos) throw StepError("STEP parse: unexpected character");
        a.kind = Arg::Kind::number;
        a.number = std::stod(s.substr(start, pos - start));
        return a;
    }
};

Vec3 vec_of(const Arg& a) {
    if (a.kind != Arg::Kind::list || a.items.size() != 3) throw StepError("STEP: expected 3-list");
    return {a.items[0].number, a.items[1].number, a.items[2].number};
}

struct EntityTable {
    std::map<int, Entity> entities;

    const Entity& get(int id) const {
        auto it = entities.find(id);
        if (it == entities.end()) throw StepError("STEP: dangling reference #" + std::to_string(id));
        return it->second;
    }

    SimilarityTransform placement(int id) const {
        const Entity& e = get(id);
        if (e.type != "AXIS2_PLACEMENT_3D" || e.args.size() < 4) {
            throw StepError("STEP: expected AXIS2_PLACEMENT_3D");
        }
        const Vec3 loc = vec_of(get(e.args[1].ref).args[1]);
        const Vec3 axis = vec_of(get(e.args[2].ref).args[1]).normalized();
        Vec3 ref = vec_of(get(e.args[3].ref).args[1]);
        ref = (ref - ref.dot(axis) * axis).normalized();
        SimilarityTransform t;
        t.translation = loc;
        t.rotation.col(0) = ref;
        t.rotation.col(1) = axis.cross(ref);
        t.rotation.col(2) = axis;
        return t;
    }

    CsgNodePtr build(int id) const {
        const Entity& e = get(id);
        if (e.type == "CSG_SOLID") return build(e.args[1].ref);
        if (e.type == "BOOLEAN_RESULT") {
            BoolOp op = BoolOp::unite;
            if (e.args[0].text == "DIFFERENCE") op = BoolOp::subtract;
            if (e.args[0].text == "INTERSECTION") op = BoolOp::intersect;
            return CsgNode::make(op, build(e.args[1].ref), build(e.args[2].ref));
        }
        Primitive p;
        if (e.type == "BLOCK") {
            p.kind = PrimitiveKind::box;
            p.pose = placement(e.args[1].ref);
            p.a = e.args[2].number;
            p.b = e.args[3].number;
            p.c = e.args[4].number;
        } else if (e.type == "RIGHT_CIRCULAR_CYLINDER") {
            p.kind = PrimitiveKind::cylinder;
            p.pose = placement(e.args[1].ref);
            p.b = e.args[2].number;
            p.a = e.args[3].number;
            p.c = 0.0;
        } else if (e.type == "SPHERE") {
            p.kind = PrimitiveKind::sphere;
            p.pose = placement(e.args[1].ref);
            p.a = e.args[2].number;
            p.b = p.c = 0.0;
        } else if (e.type == "RIGHT_CIRCULAR_CONE") {
            p.kind = PrimitiveKind::cone;
            p.pose = placement(e.args[1].ref);
            p.b = e.args[2].number;
            p.a = e.args[3].number;
            p.c = e.args.size() > 4 ? e.args[4].number : 0.0;
        } else {
            throw StepError("STEP: unsupported entity " + e.type);
        }
        p.validate();
        return CsgNode::make(std::move(p));
    }
};

}  // namespace

BRepModel from_step(const std::string& text) {
    const size_t data_pos = text.find("DATA;");
    if (data_pos == std::string::npos) throw StepError("STEP: missing DATA section");
    const size_t end_pos = text.find("ENDSEC;", data_pos);
    if (end_pos == std::string::npos) throw StepError("STEP: unterminated DATA section");

    EntityTable table;
    int root_id = -1;
    size_t pos = data_pos + 5;
    while (true) {
        const size_t hash = text.find('#', pos);
        if (hash == std::string::npos || hash >= end_pos) break;
        const size_t eq = text.find('=', hash);
        const size_t semi = text.find(';', hash);
        if (eq == std::string::npos || semi == std::string::npos || semi >= end_pos + 7) break;
        const int id = std::stoi(text.substr(hash + 1, eq - hash - 1));
        const std::string body = text.substr(eq + 1, semi - eq - 1);
        const size_t paren = body.find('(');
        if (paren == std::string::npos) throw StepError("STEP: malformed entity body");
        Entity ent;
        ent.type = body.substr(0, paren);
        while (!ent.type.empty() && std::isspace(static_cast<unsigned char>(ent.type.back()))) {
            ent.type.pop_back();
        }
        Parser p(body);
        p.pos = paren;
        const Arg args = p.parse_arg();
        ent.args = args.items;
        if (ent.type == "CSG_SOLID") root_id = id;
        table.entities[id] = std::move(ent);
        pos = semi + 1;
    }
    if (root_id < 0) {
        // Fall back to the highest-numbered entity as root.
        if (table.entities.empty()) throw StepError("STEP: no entities");
        root_id = table.entities.rbegin()->first;
    }
    return BRepModel(table.build(root_id));
}

BRepModel load_step(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw StepError("cannot open: " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_step(ss.str());
}

}  // namespace cadbench
