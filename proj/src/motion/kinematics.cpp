#include "motion/kinematics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "core/textio.hpp"

namespace gg::motion {

namespace {

// Column-vector affine transform: y = R x + t.
struct Affine {
    double r[9] = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    double t[3] = {0, 0, 0};
};

Affine compose(const Affine& a, const Affine& b) {
    Affine c;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a.r[3 * i + k] * b.r[3 * k + j];
            c.r[3 * i + j] = s;
        }
        c.t[i] = a.t[i];
        for (int k = 0; k < 3; ++k) c.t[i] += a.r[3 * i + k] * b.t[k];
    }
    return c;
}

Affine rotation(Channel axis, double degrees) {
    const double a = degrees * M_PI / 180.0;
    const double c = std::cos(a), s = std::sin(a);
    Affine m;
    switch (axis) {
        case Channel::Xrotation:
            m.r[4] = c; m.r[5] = -s;
            m.r[7] = s; m.r[8] = c;
            break;
        case Channel::Yrotation:
            m.r[0] = c; m.r[2] = s;
            m.r[6] = -s; m.r[8] = c;
            break;
        case Channel::Zrotation:
            m.r[0] = c; m.r[1] = -s;
            m.r[3] = s; m.r[4] = c;
            break;
        default:
            throw std::logic_error("rotation: not a rotation channel");
    }
    return m;
}

}  // namespace

MotionSequence forward_kinematics(const Skeleton& skel, const JointRotationSequence& rot) {
    const int n = skel.joint_count();
    const int width = skel.channel_count();
    if (rot.frames.cols() != width)
        throw std::invalid_argument("forward_kinematics: channel width " + std::to_string(rot.frames.cols()) +
                                    " does not match skeleton (" + std::to_string(width) + ")");
    if (rot.frame_time <= 0.0) throw std::invalid_argument("forward_kinematics: frame time must be positive");

    // Channel columns are laid out joint-by-joint in document order.
    std::vector<int> first_channel(n, 0);
    for (int j = 1; j < n; ++j)
        first_channel[j] = first_channel[j - 1] + static_cast<int>(skel.joints[j - 1].channels.size());

    const int frames = rot.frames.rows();
    MotionSequence out;
    out.fps = 1.0 / rot.frame_time;
    out.joints = n;
    out.positions = Matrix(frames, 3 * n);

#pragma omp parallel for schedule(static)
    for (int t = 0; t < frames; ++t) {
        std::vector<Affine> global(n);
        const double* row = rot.frames.row(t);
        for (int j = 0; j < n; ++j) {
            const Joint& joint = skel.joints[j];
            Affine local;
            local.t[0] = joint.offset[0];
            local.t[1] = joint.offset[1];
            local.t[2] = joint.offset[2];
            const double* vals = row + first_channel[j];
            for (std::size_t c = 0; c < joint.channels.size(); ++c) {
                const Channel ch = joint.channels[c];
                const double v = vals[c];
                switch (ch) {
                    case Channel::Xposition: local.t[0] += v; break;
                    case Channel::Yposition: local.t[1] += v; break;
                    case Channel::Zposition: local.t[2] += v; break;
                    default: local = compose(local, rotation(ch, v));
                }
            }
            global[j] = joint.parent < 0 ? local : compose(global[joint.parent], local);
            double* p = out.joint(t, j);
            p[0] = global[j].t[0];
            p[1] = global[j].t[1];
            p[2] = global[j].t[2];
        }
    }
    return out;
}

MotionSequence resample(const MotionSequence& m, double target_fps) {
    if (target_fps <= 0.0) throw std::invalid_argument("resample: target fps must be positive");
    if (m.fps < target_fps) throw std::invalid_argument("resample: upsampling is not supported");
    if (m.frames() == 0) throw std::invalid_argument("resample: empty sequence");

    const double span_s = (m.frames() - 1) / m.fps;
    const int t_out = static_cast<int>(std::floor(span_s * target_fps + 1e-9)) + 1;

    MotionSequence out;
    out.fps = target_fps;
    out.joints = m.joints;
    out.positions = Matrix(t_out, m.positions.cols());
    for (int j = 0; j < t_out; ++j) {
        const double src = j / target_fps * m.fps;
        int i0 = static_cast<int>(std::floor(src));
        if (i0 > m.frames() - 1) i0 = m.frames() - 1;
        const int i1 = std::min(i0 + 1, m.frames() - 1);
        const double a = src - i0;
        const double* x0 = m.positions.row(i0);
        const double* x1 = m.positions.row(i1);
        double* o = out.positions.row(j);
        for (int k = 0; k < m.positions.cols(); ++k) o[k] = x0[k] + a * (x1[k] - x0[k]);
    }
    return out;
}

Matrix pose_velocity(const MotionSequence& m) {
    if (m.frames() < 2) throw std::invalid_argument("pose_velocity: need at least two frames");
    const int t = m.frames(), d = m.positions.cols();
    Matrix vel(t, d);
    for (int i = 1; i < t; ++i) {
        const double* cur = m.positions.row(i);
        const double* prev = m.positions.row(i - 1);
        double* v = vel.row(i);
        for (int k = 0; k < d; ++k) v[k] = cur[k] - prev[k];
    }
    for (int k = 0; k < d; ++k) vel(0, k) = vel(1, k);
    return vel;
}

void write_motion_csv(const std::string& path, const MotionSequence& m, const std::string& config_note) {
    std::ostringstream out;
    out << "# fps=" << textio::format_double(m.fps) << " joints=" << m.joints << "\n";
    if (!config_note.empty()) out << "# " << config_note << "\n";
    for (int t = 0; t < m.frames(); ++t) {
        out << t;
        const double* x = m.positions.row(t);
        for (int k = 0; k < m.positions.cols(); ++k) out << ',' << textio::format_double(x[k]);
        out << '\n';
    }
    textio::write_file_atomic(path, out.str());
}

MotionSequence read_motion_csv(const std::string& path) {
    const auto lines = textio::read_lines(path);
    if (lines.empty() || lines[0].rfind("# fps=", 0) != 0)
        throw std::runtime_error(path + ": missing motion header line");
    std::istringstream hdr(lines[0].substr(2));
    std::string tok;
    double fps = 0.0;
    int joints = 0;
    while (hdr >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "fps") fps = textio::parse_double(val, path + " header fps");
        else if (key == "joints") joints = static_cast<int>(textio::parse_long(val, path + " header joints"));
    }
    if (fps <= 0.0 || joints <= 0) throw std::runtime_error(path + ": bad motion header");

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        auto cells = textio::split(line, ',');
        if (static_cast<int>(cells.size()) != 3 * joints + 1)
            throw std::runtime_error(path + ":" + std::to_string(i + 1) + ": expected " +
                                     std::to_string(3 * joints + 1) + " columns");
        std::vector<double> row(3 * joints);
        for (int k = 0; k < 3 * joints; ++k)
            row[k] = textio::parse_double(cells[k + 1], path + ":" + std::to_string(i + 1));
        rows.push_back(std::move(row));
    }
    MotionSequence m;
    m.fps = fps;
    m.joints = joints;
    m.positions = Matrix(static_cast<int>(rows.size()), 3 * joints);
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (int k = 0; k < 3 * joints; ++k) m.positions(static_cast<int>(t), k) = rows[t][k];
    return m;
}

}  // namespace gg::motion
