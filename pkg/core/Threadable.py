class Threadable(object):
    def __init__(self, name, thread_manager):
        """
        Initialize the threadable object.
        """

        self._name = name
        self._thread_manager = thread_manager
        self._active = False

    def activate(self):
        """
        Activate the threadable object.
        """

        self._active = True
        self._thread_manager.register(self._name, self)

    def deactivate(self):
        """
        Deactivate the threadable object.

        Subclasses that run a loop must stop it when `is_active` becomes
        `False`.
        """

        self._active = False
        self._thread_manager.unregister(self._name)

    @property
    def is_active(self):
        """
        Check whether the threadable object is registered and running.
        """

        return self._active

    @property
    def thread_name(self):
        """
        Retrieve the name of this thread.
        """

        return self._name
