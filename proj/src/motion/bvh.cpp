#include "motion/bvh.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "core/textio.hpp"

namespace gg::motion {

int Skeleton::channel_count() const {
    int n = 0;
    for (const auto& j : joints) n += static_cast<int>(j.channels.size());
    return n;
}

namespace {

struct Token {
    std::string text;
    int line;
};

class TokenStream {
public:
    explicit TokenStream(const std::string& text) {
        int line = 1;
        std::string cur;
        int cur_line = 1;
        auto flush = [&] {
            if (!cur.empty()) {
                tokens_.push_back({cur, cur_line});
                cur.clear();
            }
        };
        for (char c : text) {
            if (c == '\n') {
                flush();
                ++line;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                flush();
            } else {
                if (cur.empty()) cur_line = line;
                cur.push_back(c);
            }
        }
        flush();
        last_line_ = line;
    }

    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek() const {
        if (done()) throw std::runtime_error("BVH parse error at line " + std::to_string(last_line_) +
                                             ": unexpected end of file");
        return tokens_[pos_];
    }
    Token next() {
        Token t = peek();
        ++pos_;
        return t;
    }
    void expect(const std::string& text) {
        Token t = next();
        if (t.text != text)
            throw std::runtime_error("BVH parse error at line " + std::to_string(t.line) + ": expected '" + text +
                                     "', got '" + t.text + "'");
    }
    double number(const char* what) {
        Token t = next();
        try {
            return std::stod(t.text);
        } catch (const std::exception&) {
            throw std::runtime_error("BVH parse error at line " + std::to_string(t.line) + ": expected " + what +
                                     ", got '" + t.text + "'");
        }
    }
    int line() const { return done() ? last_line_ : tokens_[pos_].line; }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int last_line_ = 1;
};

Channel channel_from_name(const std::string& name, int line) {
    if (name == "Xposition") return Channel::Xposition;
    if (name == "Yposition") return Channel::Yposition;
    if (name == "Zposition") return Channel::Zposition;
    if (name == "Xrotation") return Channel::Xrotation;
    if (name == "Yrotation") return Channel::Yrotation;
    if (name == "Zrotation") return Channel::Zrotation;
    throw std::runtime_error("BVH parse error at line " + std::to_string(line) + ": unknown channel '" + name + "'");
}

void validate_rotation_order(const Joint& j, int line) {
    std::vector<Channel> rot;
    for (Channel c : j.channels)
        if (c == Channel::Xrotation || c == Channel::Yrotation || c == Channel::Zrotation) rot.push_back(c);
    if (rot.empty()) return;
    std::set<Channel> distinct(rot.begin(), rot.end());
    if (rot.size() != 3 || distinct.size() != 3)
        throw std::runtime_error("BVH parse error at line " + std::to_string(line) + ": joint '" + j.name +
                                 "' must declare three distinct rotation channels");
}

// Parses the block following ROOT/JOINT/End-Site, recursing into children.
void parse_joint_block(TokenStream& ts, Skeleton& skel, int joint_index) {
    ts.expect("{");
    ts.expect("OFFSET");
    for (int k = 0; k < 3; ++k) skel.joints[joint_index].offset[k] = ts.number("offset value");

    while (true) {
        Token t = ts.next();
        if (t.text == "}") break;
        if (t.text == "CHANNELS") {
            const int n = static_cast<int>(ts.number("channel count"));
            if (n < 0 || n > 6)
                throw std::runtime_error("BVH parse error at line " + std::to_string(t.line) +
                                         ": channel count out of range");
            for (int k = 0; k < n; ++k) {
                Token c = ts.next();
                skel.joints[joint_index].channels.push_back(channel_from_name(c.text, c.line));
            }
            validate_rotation_order(skel.joints[joint_index], t.line);
        } else if (t.text == "JOINT" || t.text == "End") {
            std::string name;
            if (t.text == "End") {
                Token site = ts.next();
                if (site.text != "Site")
                    throw std::runtime_error("BVH parse error at line " + std::to_string(site.line) +
                                             ": expected 'Site' after 'End'");
                name = skel.joints[joint_index].name + "_end";
            } else {
                name = ts.next().text;
            }
            const int child = skel.joint_count();
            skel.joints.push_back(Joint{name, joint_index, {0, 0, 0}, {}});
            parse_joint_block(ts, skel, child);
        } else {
            throw std::runtime_error("BVH parse error at line " + std::to_string(t.line) + ": unexpected token '" +
                                     t.text + "' in joint block");
        }
    }
}

}  // namespace

std::pair<Skeleton, JointRotationSequence> parse_bvh(const std::string& text) {
    TokenStream ts(text);
    ts.expect("HIERARCHY");
    Token root_kw = ts.next();
    if (root_kw.text != "ROOT")
        throw std::runtime_error("BVH parse error at line " + std::to_string(root_kw.line) + ": expected ROOT");
    Skeleton skel;
    skel.joints.push_back(Joint{ts.next().text, -1, {0, 0, 0}, {}});
    parse_joint_block(ts, skel, 0);

    ts.expect("MOTION");
    ts.expect("Frames:");
    const int frames = static_cast<int>(ts.number("frame count"));
    ts.expect("Frame");
    ts.expect("Time:");
    const double frame_time = ts.number("frame time");
    if (frames < 0) throw std::runtime_error("BVH parse error: negative frame count");
    if (frame_time <= 0.0) throw std::runtime_error("BVH parse error: frame time must be positive");

    const int width = skel.channel_count();
    JointRotationSequence seq;
    seq.frame_time = frame_time;
    seq.frames = Matrix(frames, width);
    for (int t = 0; t < frames; ++t) {
        const int row_line = ts.line();
        for (int c = 0; c < width; ++c) {
            if (ts.done() || (c > 0 && ts.line() != row_line))
                throw std::runtime_error("BVH parse error at line " + std::to_string(row_line) + ": frame row has " +
                                         std::to_string(c) + " values, expected " + std::to_string(width));
            seq.frames(t, c) = ts.number("channel value");
        }
        if (!ts.done() && ts.line() == row_line)
            throw std::runtime_error("BVH parse error at line " + std::to_string(row_line) +
                                     ": frame row has extra values, expected " + std::to_string(width));
    }
    if (!ts.done())
        throw std::runtime_error("BVH parse error at line " + std::to_string(ts.line()) +
                                 ": trailing content after the declared frames");
    return {std::move(skel), std::move(seq)};
}

std::pair<Skeleton, JointRotationSequence> load_bvh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_bvh(ss.str());
}

void write_skeleton_txt(const std::string& path, const Skeleton& skel) {
    std::ostringstream out;
    out << "# joint parent offset_x offset_y offset_z\n";
    for (const auto& j : skel.joints)
        out << j.name << ' ' << j.parent << ' ' << textio::format_double(j.offset[0]) << ' '
            << textio::format_double(j.offset[1]) << ' ' << textio::format_double(j.offset[2]) << '\n';
    textio::write_file_atomic(path, out.str());
}

Skeleton read_skeleton_txt(const std::string& path) {
    Skeleton skel;
    int lineno = 0;
    for (const auto& line : textio::read_lines(path)) {
        ++lineno;
        const std::string t = textio::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ss(t);
        Joint j;
        ss >> j.name >> j.parent >> j.offset[0] >> j.offset[1] >> j.offset[2];
        if (ss.fail()) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad skeleton row");
        skel.joints.push_back(j);
    }
    if (skel.joints.empty()) throw std::runtime_error(path + ": empty skeleton");
    return skel;
}

}  // namespace gg::motion
