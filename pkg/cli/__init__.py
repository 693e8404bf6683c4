from .numspec import number_request_json, parse_grid, parse_index_list, parse_number
