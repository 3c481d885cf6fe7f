#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nlsb/core.hpp"

namespace nlsb {

// Minimal SVG writer: axes, polylines, circles, text. Enough for spectrum
// scatter plots (continuous bands as line segments, point spectrum as dots)
// and growth-curve plots, with no plotting dependency.

class SvgPlot {
public:
    SvgPlot(double x_lo, double x_hi, double y_lo, double y_hi, int width = 640,
            int height = 480)
        : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), w_(width), h_(height) {}

    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& color = "#1f77b4", double stroke = 1.5) {
        std::ostringstream os;
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << stroke
           << "\" points=\"";
        for (const auto& [x, y] : pts) os << px(x) << ',' << py(y) << ' ';
        os << "\"/>";
        body_.push_back(os.str());
    }

    void segment(double x0, double y0, double x1, double y1,
                 const std::string& color = "#1f77b4", double stroke = 2.0) {
        polyline({{x0, y0}, {x1, y1}}, color, stroke);
    }

    void circles(const std::vector<std::pair<double, double>>& pts, double r = 3.0,
                 const std::string& color = "#d62728") {
        for (const auto& [x, y] : pts) {
            std::ostringstream os;
            os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"" << r
               << "\" fill=\"" << color << "\"/>";
            body_.push_back(os.str());
        }
    }

    void text(double x, double y, const std::string& s, int size = 12,
              const std::string& color = "#202020") {
        std::ostringstream os;
        os << "<text x=\"" << px(x) << "\" y=\"" << py(y) << "\" font-size=\"" << size
           << "\" fill=\"" << color << "\" font-family=\"sans-serif\">" << s << "</text>";
        body_.push_back(os.str());
    }

    void title(const std::string& s) { title_ = s; }

    void save(const std::filesystem::path& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open " + path.string());
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
            << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\">\n";
        out << "<rect width=\"" << w_ << "\" height=\"" << h_ << "\" fill=\"white\"/>\n";
        // axes through the origin when visible, else along the frame
        const double ax = (x_lo_ < 0 && x_hi_ > 0) ? 0.0 : x_lo_;
        const double ay = (y_lo_ < 0 && y_hi_ > 0) ? 0.0 : y_lo_;
        out << "<line x1=\"" << px(x_lo_) << "\" y1=\"" << py(ay) << "\" x2=\"" << px(x_hi_)
            << "\" y2=\"" << py(ay) << "\" stroke=\"#909090\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << px(ax) << "\" y1=\"" << py(y_lo_) << "\" x2=\"" << px(ax)
            << "\" y2=\"" << py(y_hi_) << "\" stroke=\"#909090\" stroke-width=\"1\"/>\n";
        for (const std::string& s : body_) out << s << '\n';
        if (!title_.empty())
            out << "<text x=\"" << w_ / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\""
                << " font-family=\"sans-serif\">" << title_ << "</text>\n";
        out << "</svg>\n";
    }

private:
    double px(double x) const {
        return margin_ + (x - x_lo_) / (x_hi_ - x_lo_) * (w_ - 2 * margin_);
    }
    double py(double y) const {
        return h_ - margin_ - (y - y_lo_) / (y_hi_ - y_lo_) * (h_ - 2 * margin_);
    }

    double x_lo_, x_hi_, y_lo_, y_hi_;
    int w_, h_;
    double margin_ = 40.0;
    std::string title_;
    std::vector<std::string> body_;
};

}  // namespace nlsb
