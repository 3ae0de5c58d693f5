#pragma once

namespace httplib {
class Server;
}

namespace irp {

class SessionService;

/// Registers the /api routes on server. Payloads are JSON with the domain
/// types' lower_snake_case field names; errors are {code, message, field?}.
void mount_api(httplib::Server& server, SessionService& service);

}  // namespace irp
