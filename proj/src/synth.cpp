#include "mvd/synth.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mvd {

namespace {

constexpr double kMinHit = 1e-9;

uint64_t fmix64(uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return k;
}

double lattice_value(int64_t x, int64_t y, int64_t z, uint64_t seed) {
    uint64_t h = seed;
    h = fmix64(h ^ static_cast<uint64_t>(x));
    h = fmix64(h ^ static_cast<uint64_t>(y));
    h = fmix64(h ^ static_cast<uint64_t>(z));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double trilinear_noise(const Eigen::Vector3d& p, uint64_t seed) {
    const double fx = std::floor(p.x()), fy = std::floor(p.y()), fz = std::floor(p.z());
    const auto x0 = static_cast<int64_t>(fx);
    const auto y0 = static_cast<int64_t>(fy);
    const auto z0 = static_cast<int64_t>(fz);
    const double tx = p.x() - fx, ty = p.y() - fy, tz = p.z() - fz;
    double c[2][2][2];
    for (int dz = 0; dz < 2; ++dz)
        for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx)
                c[dz][dy][dx] = lattice_value(x0 + dx, y0 + dy, z0 + dz, seed);
    const double x00 = c[0][0][0] + tx * (c[0][0][1] - c[0][0][0]);
    const double x01 = c[0][1][0] + tx * (c[0][1][1] - c[0][1][0]);
    const double x10 = c[1][0][0] + tx * (c[1][0][1] - c[1][0][0]);
    const double x11 = c[1][1][0] + tx * (c[1][1][1] - c[1][1][0]);
    const double y0v = x00 + ty * (x01 - x00);
    const double y1v = x10 + ty * (x11 - x10);
    return y0v + tz * (y1v - y0v);
}

// Nearest intersection along o + t*d with t > kMinHit, or +inf.
double hit_plane(const PlanePrim& pl, const Eigen::Vector3d& o, const Eigen::Vector3d& d) {
    const double den = d.dot(pl.normal);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    const double t = (pl.point - o).dot(pl.normal) / den;
    return t > kMinHit ? t : std::numeric_limits<double>::infinity();
}

double hit_sphere(const SpherePrim& sp, const Eigen::Vector3d& o, const Eigen::Vector3d& d) {
    const Eigen::Vector3d oc = o - sp.center;
    const double a = d.dot(d);
    const double b = 2.0 * d.dot(oc);
    const double c = oc.dot(oc) - sp.radius * sp.radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::numeric_limits<double>::infinity();
    const double sq = std::sqrt(disc);
    const double t0 = (-b - sq) / (2.0 * a);
    if (t0 > kMinHit) return t0;
    const double t1 = (-b + sq) / (2.0 * a);
    return t1 > kMinHit ? t1 : std::numeric_limits<double>::infinity();
}

struct RayHit {
    double t = std::numeric_limits<double>::infinity();
    bool hit = false;
};

RayHit trace(const SceneSpec& spec, const Eigen::Vector3d& o, const Eigen::Vector3d& d) {
    RayHit best;
    for (const Primitive& prim : spec.primitives) {
        const double t = std::holds_alternative<PlanePrim>(prim)
                             ? hit_plane(std::get<PlanePrim>(prim), o, d)
                             : hit_sphere(std::get<SpherePrim>(prim), o, d);
        if (t < best.t) {
            best.t = t;
            best.hit = true;
        }
    }
    return best;
}

// Renders one image row. Ray directions have camera-frame z = 1, so the
// hit parameter is the camera-frame depth.
void render_row(const SceneSpec& spec, const CameraSpec& cam, const Pose& cam_to_world,
                int y, Image& img, DepthMap& depth) {
    const Eigen::Vector3d origin = cam_to_world.translation;
    for (int x = 0; x < cam.width; ++x) {
        const Eigen::Vector3d dir_cam((x - cam.intrinsics.cx) / cam.intrinsics.fx,
                                      (y - cam.intrinsics.cy) / cam.intrinsics.fy, 1.0);
        const Eigen::Vector3d dir = cam_to_world.rotation * dir_cam;
        const RayHit hit = trace(spec, origin, dir);
        if (!hit.hit) continue;  // stays black, depth 0
        depth.at(y, x) = hit.t;
        const Eigen::Vector3d p = origin + hit.t * dir;
        const auto v = static_cast<float>(value_noise(p, spec.noise));
        for (int c = 0; c < img.channels; ++c) img.at(y, x, c) = v;
    }
}

void render_camera(const SceneSpec& spec, size_t idx, Image& img, DepthMap& depth,
                   bool parallel) {
    const CameraSpec& cam = spec.cameras[idx];
    img = Image(cam.width, cam.height, 3, 0.f);
    depth = DepthMap(cam.width, cam.height, 0.0);
    const Pose cam_to_world = invert_pose(cam.world_to_camera);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < cam.height; ++y) render_row(spec, cam, cam_to_world, y, img, depth);
    } else {
        for (int y = 0; y < cam.height; ++y) render_row(spec, cam, cam_to_world, y, img, depth);
    }
}

Sample render_impl(const SceneSpec& spec, bool parallel) {
    validate(spec);
    Sample s;
    s.id = "synth";
    const Pose key_world_to_cam = spec.cameras[0].world_to_camera;
    for (size_t i = 0; i < spec.cameras.size(); ++i) {
        Image img;
        DepthMap depth;
        render_camera(spec, i, img, depth, parallel);
        View view;
        view.image = std::move(img);
        view.intrinsics = spec.cameras[i].intrinsics;
        // view frame -> keyview frame
        view.pose = compose_pose(invert_pose(spec.cameras[i].world_to_camera),
                                 key_world_to_cam);
        if (i == 0) {
            s.keyview = std::move(view);
            s.gt_depth = std::move(depth);
        } else {
            s.others.push_back(std::move(view));
        }
    }
    return s;
}

}  // namespace

void validate(const SceneSpec& spec) {
    if (spec.primitives.empty())
        throw std::invalid_argument("SceneSpec: need at least one primitive");
    if (spec.cameras.size() < 2)
        throw std::invalid_argument("SceneSpec: need at least two cameras");
    for (const Primitive& prim : spec.primitives)
        if (const auto* pl = std::get_if<PlanePrim>(&prim))
            if (std::abs(pl->normal.norm() - 1.0) > 1e-9)
                throw std::invalid_argument("SceneSpec: plane normal must be unit length");
    for (const CameraSpec& cam : spec.cameras) {
        if (!intrinsics_valid(cam.intrinsics) || cam.width <= 0 || cam.height <= 0)
            throw std::invalid_argument("SceneSpec: degenerate camera");
        if (!pose_valid(cam.world_to_camera))
            throw std::invalid_argument("SceneSpec: invalid camera pose");
    }
    if (spec.noise.octaves < 1 || !(spec.noise.scale > 0.0))
        throw std::invalid_argument("SceneSpec: invalid noise parameters");
}

double value_noise(const Eigen::Vector3d& p, const NoiseSpec& noise) {
    double sum = 0.0, amp = 1.0, norm = 0.0, freq = noise.scale;
    for (int o = 0; o < noise.octaves; ++o) {
        const uint64_t seed = noise.seed ^ (static_cast<uint64_t>(o) * 0x9e3779b97f4a7c15ULL);
        sum += amp * trilinear_noise(p * freq, seed);
        norm += amp;
        amp *= 0.5;
        freq *= 2.0;
    }
    return sum / norm;
}

Sample render(const SceneSpec& spec) { return render_impl(spec, true); }

DepthMap render_depth(const SceneSpec& spec, size_t cam_index) {
    validate(spec);
    if (cam_index >= spec.cameras.size())
        throw std::invalid_argument("render_depth: camera index out of range");
    Image img;
    DepthMap depth;
    render_camera(spec, cam_index, img, depth, false);
    return depth;
}

SceneSpec make_scene(const std::string& kind, double depth, double baseline,
                     int width, int height, int n_other, uint64_t seed) {
    if (!(depth > 0.0) || width <= 0 || height <= 0 || n_other < 1)
        throw std::invalid_argument("make_scene: bad parameters");
    SceneSpec spec;
    if (kind == "plane") {
        spec.primitives.push_back(PlanePrim{{0, 0, depth}, {0, 0, 1}});
    } else if (kind == "sphere") {
        spec.primitives.push_back(PlanePrim{{0, 0, 2.0 * depth}, {0, 0, 1}});
        spec.primitives.push_back(SpherePrim{{0, 0, depth}, 0.4 * depth});
    } else if (kind == "mixed") {
        spec.primitives.push_back(PlanePrim{{0, 0, 2.0 * depth}, {0, 0, 1}});
        spec.primitives.push_back(SpherePrim{{-0.2 * depth, 0.1 * depth, depth}, 0.3 * depth});
        spec.primitives.push_back(SpherePrim{{0.3 * depth, -0.1 * depth, 1.4 * depth}, 0.25 * depth});
    } else {
        throw std::invalid_argument("make_scene: unknown kind '" + kind + "'");
    }
    spec.noise.seed = seed;
    Intrinsics intr{static_cast<double>(width), static_cast<double>(width),
                    (width - 1) / 2.0, (height - 1) / 2.0};
    for (int i = 0; i <= n_other; ++i) {
        // Camera 0 at the origin; others at +-b, +-2b, ... along x.
        const int ring = (i + 1) / 2;
        const double sign = (i % 2 == 1) ? 1.0 : -1.0;
        const double cx = (i == 0) ? 0.0 : sign * ring * baseline;
        Pose w2c = Pose::identity();
        w2c.translation = Eigen::Vector3d(-cx, 0, 0);
        spec.cameras.push_back(CameraSpec{w2c, intr, width, height});
    }
    return spec;
}

namespace serial {
Sample render(const SceneSpec& spec) { return render_impl(spec, false); }
}  // namespace serial

}  // namespace mvd
