#include "mvd/manifest.hpp"

#include <Eigen/Dense>
#include <fstream>

#include <json.hpp>

#include "mvd/pfm.hpp"
#include "mvd/ppm.hpp"

namespace mvd {

namespace {

using nlohmann::json;

template <size_t N>
std::array<double, N> number_array(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != N)
        throw std::runtime_error(what + ": expected an array of " + std::to_string(N) +
                                 " numbers");
    std::array<double, N> out{};
    for (size_t i = 0; i < N; ++i) out[i] = j[i].get<double>();
    return out;
}

Pose pose_from_array(const std::array<double, 12>& m, const std::string& what) {
    Pose p;
    p.rotation << m[0], m[1], m[2], m[4], m[5], m[6], m[8], m[9], m[10];
    p.translation << m[3], m[7], m[11];
    if (!p.translation.allFinite() || !p.rotation.allFinite())
        throw std::runtime_error(what + ": non-finite pose entries");
    // Accept drift up to 1e-4, then snap to the nearest rotation so the
    // stored Pose meets its own tighter validity tolerance.
    if (!pose_valid(p, 1e-4))
        throw std::runtime_error(what + ": pose is not orthonormal within 1e-4");
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(p.rotation,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    p.rotation = svd.matrixU() * svd.matrixV().transpose();
    return p;
}

Intrinsics intrinsics_from_array(const std::array<double, 4>& a, const std::string& what) {
    Intrinsics k{a[0], a[1], a[2], a[3]};
    if (!intrinsics_valid(k))
        throw std::runtime_error(what + ": invalid intrinsics (focal must be positive)");
    return k;
}

std::string sample_label(const ManifestSample& s, size_t index) {
    return s.id.empty() ? "sample " + std::to_string(index) : "sample '" + s.id + "'";
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("manifest " + path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array())
        throw std::runtime_error("manifest " + path.string() +
                                 ": top-level 'samples' array required");
    Manifest m;
    m.dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    size_t index = 0;
    for (const json& js : doc["samples"]) {
        ManifestSample s;
        s.id = js.value("id", "sample_" + std::to_string(index));
        const std::string label = "manifest " + path.string() + ", " + sample_label(s, index);
        if (!js.contains("key_image") || !js.contains("key_depth") ||
            !js.contains("key_intrinsics") || !js.contains("views"))
            throw std::runtime_error(
                label + ": key_image, key_depth, key_intrinsics and views are required");
        s.key_image = js["key_image"].get<std::string>();
        s.key_depth = js["key_depth"].get<std::string>();
        s.key_intrinsics = number_array<4>(js["key_intrinsics"], label + " key_intrinsics");
        if (js.contains("gt_range")) {
            const auto r = number_array<2>(js["gt_range"], label + " gt_range");
            if (!(r[0] > 0.0) || !(r[0] <= r[1]))
                throw std::runtime_error(label + ": gt_range needs 0 < min <= max");
            s.gt_range = {r[0], r[1]};
        }
        if (!js["views"].is_array() || js["views"].empty())
            throw std::runtime_error(label + ": at least one other view required");
        for (const json& jv : js["views"]) {
            ManifestView v;
            if (!jv.contains("image") || !jv.contains("pose_3x4_row_major") ||
                !jv.contains("intrinsics"))
                throw std::runtime_error(
                    label + ": view needs image, pose_3x4_row_major, intrinsics");
            v.image = jv["image"].get<std::string>();
            v.pose = number_array<12>(jv["pose_3x4_row_major"], label + " pose");
            v.intrinsics = number_array<4>(jv["intrinsics"], label + " view intrinsics");
            s.views.push_back(std::move(v));
        }
        m.samples.push_back(std::move(s));
        ++index;
    }
    return m;
}

Sample load_sample(const Manifest& m, size_t index) {
    if (index >= m.samples.size())
        throw std::out_of_range("load_sample: index out of range");
    const ManifestSample& ms = m.samples[index];
    const std::string label = sample_label(ms, index);

    Sample s;
    s.id = ms.id;
    s.keyview.image = read_ppm((m.dir / ms.key_image).string());
    s.keyview.pose = Pose::identity();
    s.keyview.intrinsics = intrinsics_from_array(ms.key_intrinsics, label);
    s.gt_depth = read_pfm((m.dir / ms.key_depth).string());
    s.gt_range = ms.gt_range;
    if (s.gt_depth.width != s.keyview.image.width ||
        s.gt_depth.height != s.keyview.image.height)
        throw std::runtime_error(label + ": GT depth dimensions do not match the key image");

    for (size_t i = 0; i < ms.views.size(); ++i) {
        const std::string vlabel = label + ", view " + std::to_string(i + 1);
        View v;
        v.image = read_ppm((m.dir / ms.views[i].image).string());
        if (v.image.width != s.keyview.image.width ||
            v.image.height != s.keyview.image.height)
            throw std::runtime_error(vlabel + ": image dimensions do not match the key image");
        v.pose = pose_from_array(ms.views[i].pose, vlabel);
        v.intrinsics = intrinsics_from_array(ms.views[i].intrinsics, vlabel);
        s.others.push_back(std::move(v));
    }
    return s;
}

void save_manifest(const Manifest& m, const std::filesystem::path& path) {
    json doc;
    doc["samples"] = json::array();
    for (const ManifestSample& s : m.samples) {
        json js;
        js["id"] = s.id;
        js["key_image"] = s.key_image;
        js["key_depth"] = s.key_depth;
        js["key_intrinsics"] = s.key_intrinsics;
        if (s.gt_range) js["gt_range"] = {s.gt_range->first, s.gt_range->second};
        js["views"] = json::array();
        for (const ManifestView& v : s.views) {
            json jv;
            jv["image"] = v.image;
            jv["pose_3x4_row_major"] = v.pose;
            jv["intrinsics"] = v.intrinsics;
            js["views"].push_back(std::move(jv));
        }
        doc["samples"].push_back(std::move(js));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
    out << doc.dump(2) << "\n";
}

}  // namespace mvd
