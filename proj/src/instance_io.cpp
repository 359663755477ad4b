#include <cmath>
#include <fstream>

#include "unionpath/geom.hpp"

namespace unionpath {

namespace {

using nlohmann::json;

json rational_json(const Rational& q) {
    if (q.den == 1) return q.num;
    return q.str();
}

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<int64_t>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_float()) {
        // floats are accepted and converted exactly (dyadic)
        double v = j.get<double>();
        if (!std::isfinite(v)) throw InvalidInstance("non-finite coordinate");
        int64_t den = 1;
        while (v != std::floor(v) && den < (int64_t(1) << 40)) v *= 2, den *= 2;
        if (v != std::floor(v) || std::abs(v) > 9e15) throw InvalidInstance("coordinate not representable");
        return Rational(int64_t(v), den);
    }
    throw InvalidInstance("coordinate must be an integer or a \"p/q\" string");
}

}  // namespace

json instance_to_json(const Instance& inst) {
    json objs = json::array();
    for (const auto& o : inst.objects) {
        json jo;
        jo["id"] = o.id;
        if (o.shape == Shape::Disk) {
            jo["shape"] = "disk";
            jo["center"] = json::array({rational_json(o.cx), rational_json(o.cy)});
            jo["radius"] = rational_json(o.r);
        } else {
            jo["shape"] = "polygon";
            json vs = json::array();
            for (const auto& v : o.vertices) vs.push_back(json::array({rational_json(v[0]), rational_json(v[1])}));
            jo["vertices"] = vs;
        }
        objs.push_back(jo);
    }
    json j;
    j["name"] = inst.name;
    j["objects"] = objs;
    return j;
}

Instance instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("objects") || !j["objects"].is_array())
        throw InvalidInstance("instance needs an \"objects\" array");
    Instance inst;
    inst.name = j.value("name", std::string());
    for (const auto& jo : j["objects"]) {
        if (!jo.contains("id") || !jo["id"].is_number_integer()) throw InvalidInstance("object without integer id");
        GeomObject o;
        o.id = jo["id"].get<int>();
        std::string shape = jo.value("shape", std::string());
        if (shape == "disk") {
            o.shape = Shape::Disk;
            const auto& c = jo.at("center");
            if (!c.is_array() || c.size() != 2) throw InvalidInstance("disk center must have two coordinates");
            o.cx = rational_from(c[0]);
            o.cy = rational_from(c[1]);
            o.r = rational_from(jo.at("radius"));
        } else if (shape == "polygon") {
            o.shape = Shape::Polygon;
            for (const auto& v : jo.at("vertices")) {
                if (!v.is_array() || v.size() != 2) throw InvalidInstance("polygon vertex must have two coordinates");
                o.vertices.push_back({rational_from(v[0]), rational_from(v[1])});
            }
        } else {
            throw InvalidInstance("unknown shape: " + shape);
        }
        inst.objects.push_back(std::move(o));
    }
    inst.finalize();
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInstance("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInstance(std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << instance_to_json(inst).dump(1) << "\n";
}

}  // namespace unionpath
